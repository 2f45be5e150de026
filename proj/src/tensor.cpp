#include "dampl/tensor.hpp"

namespace dampl {

double frob_inner(const SymTensor2& a, const SymTensor2& b) {
  if (a.dim() != b.dim()) throw DomainError("frob_inner: dimension mismatch");
  double s = 0.0;
  const int d = a.dim();
  for (int i = 0; i < d; ++i) s += a.comp(i) * b.comp(i);
  for (int k = d; k < a.ncomp(); ++k) s += 2.0 * a.comp(k) * b.comp(k);
  return s;
}

Tensor4 Tensor4::isotropic(int dim, double lambda, double mu) {
  Tensor4 t(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k)
        for (int l = 0; l < dim; ++l) {
          double v = 0.0;
          if (i == j && k == l) v += lambda;
          if (i == k && j == l) v += mu;
          if (i == l && j == k) v += mu;
          t(i, j, k, l) = v;
        }
  return t;
}

SymTensor2 Tensor4::apply(const SymTensor2& a) const {
  if (dim_ != a.dim()) throw DomainError("Tensor4::apply: dimension mismatch");
  SymTensor2 r(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = i; j < dim_; ++j) {
      double v = 0.0;
      for (int k = 0; k < dim_; ++k)
        for (int l = 0; l < dim_; ++l) v += (*this)(i, j, k, l) * a(k, l);
      r.set(i, j, v);
    }
  return r;
}

double quad_form(const Tensor4& k, const SymTensor2& a, const SymTensor2& b) {
  return frob_inner(k.apply(a), b);
}

std::vector<SymTensor2> SubspaceS::basis(int dim) const {
  std::vector<SymTensor2> b;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  if (tag == Tag::FullSymmetric) {
    for (int i = 0; i < dim; ++i) {
      SymTensor2 t(dim);
      t.set(i, i, 1.0);
      b.push_back(t);
    }
    for (int i = 0; i < dim; ++i)
      for (int j = i + 1; j < dim; ++j) {
        SymTensor2 t(dim);
        t.set(i, j, inv_sqrt2);
        b.push_back(t);
      }
    return b;
  }
  // Deviatoric: trace-free symmetric tensors.
  if (dim == 1) return b;
  if (dim == 2) {
    SymTensor2 t1(2);
    t1.set(0, 0, inv_sqrt2);
    t1.set(1, 1, -inv_sqrt2);
    b.push_back(t1);
    SymTensor2 t2(2);
    t2.set(0, 1, inv_sqrt2);
    b.push_back(t2);
    return b;
  }
  // d == 3: two diagonal trace-free directions plus three off-diagonals.
  const double inv_sqrt6 = 1.0 / std::sqrt(6.0);
  SymTensor2 t1(3);
  t1.set(0, 0, inv_sqrt2);
  t1.set(1, 1, -inv_sqrt2);
  b.push_back(t1);
  SymTensor2 t2(3);
  t2.set(0, 0, inv_sqrt6);
  t2.set(1, 1, inv_sqrt6);
  t2.set(2, 2, -2.0 * inv_sqrt6);
  b.push_back(t2);
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      SymTensor2 t(3);
      t.set(i, j, inv_sqrt2);
      b.push_back(t);
    }
  return b;
}

SymTensor2 project_subspace(const SymTensor2& a, const SubspaceS& s) { return s.project(a); }

SymTensor2 project_K(const SymTensor2& a, const ConvexSetK& k) { return k.project(a); }

SymTensor2 apply_tensor4(const Tensor4& k, const SymTensor2& a) { return k.apply(a); }

}  // namespace dampl
