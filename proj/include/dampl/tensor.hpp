#ifndef DAMPL_TENSOR_HPP
#define DAMPL_TENSOR_HPP

#include <array>
#include <cmath>
#include <vector>

#include "dampl/error.hpp"

namespace dampl {

// Symmetric second-order tensor for d in {1,2,3}. Only the d(d+1)/2
// independent components are stored; the Frobenius inner product counts
// off-diagonal pairs twice, matching |.| on full d x d matrices.
//
// Storage order: d=1: [xx]; d=2: [xx,yy,xy]; d=3: [xx,yy,zz,yz,xz,xy].
class SymTensor2 {
public:
  SymTensor2() : dim_(0) {}
  explicit SymTensor2(int dim) : dim_(check_dim(dim)) { c_.fill(0.0); }

  static SymTensor2 zero(int dim) { return SymTensor2(dim); }

  static SymTensor2 identity(int dim) {
    SymTensor2 t(dim);
    for (int i = 0; i < dim; ++i) t.c_[i] = 1.0;
    return t;
  }

  int dim() const { return dim_; }
  int ncomp() const { return dim_ * (dim_ + 1) / 2; }

  double comp(int k) const { return c_[k]; }
  double& comp(int k) { return c_[k]; }

  // Full-matrix accessors.
  double operator()(int i, int j) const { return c_[index(i, j)]; }
  void set(int i, int j, double v) { c_[index(i, j)] = v; }

  double trace() const {
    double t = 0.0;
    for (int i = 0; i < dim_; ++i) t += c_[i];
    return t;
  }

  double norm() const { return std::sqrt(norm2()); }

  double norm2() const {
    double s = 0.0;
    for (int i = 0; i < dim_; ++i) s += c_[i] * c_[i];
    for (int k = dim_; k < ncomp(); ++k) s += 2.0 * c_[k] * c_[k];
    return s;
  }

  SymTensor2& operator+=(const SymTensor2& o) {
    require_same_dim(o);
    for (int k = 0; k < ncomp(); ++k) c_[k] += o.c_[k];
    return *this;
  }
  SymTensor2& operator-=(const SymTensor2& o) {
    require_same_dim(o);
    for (int k = 0; k < ncomp(); ++k) c_[k] -= o.c_[k];
    return *this;
  }
  SymTensor2& operator*=(double s) {
    for (int k = 0; k < ncomp(); ++k) c_[k] *= s;
    return *this;
  }

  friend SymTensor2 operator+(SymTensor2 a, const SymTensor2& b) { return a += b; }
  friend SymTensor2 operator-(SymTensor2 a, const SymTensor2& b) { return a -= b; }
  friend SymTensor2 operator*(SymTensor2 a, double s) { return a *= s; }
  friend SymTensor2 operator*(double s, SymTensor2 a) { return a *= s; }

  bool operator==(const SymTensor2& o) const { return dim_ == o.dim_ && c_ == o.c_; }

  // a += s*b
  void axpy(double s, const SymTensor2& b) {
    require_same_dim(b);
    for (int k = 0; k < ncomp(); ++k) c_[k] += s * b.c_[k];
  }

  int index(int i, int j) const {
    if (i == j) return i;
    if (i > j) std::swap(i, j);
    if (dim_ == 2) return 2;
    // d == 3: (1,2)->3, (0,2)->4, (0,1)->5
    if (i == 1) return 3;
    return (j == 2) ? 4 : 5;
  }

private:
  static int check_dim(int d) {
    if (d < 1 || d > 3) throw DomainError("SymTensor2: dim must be in {1,2,3}");
    return d;
  }
  void require_same_dim(const SymTensor2& o) const {
    if (dim_ != o.dim_) throw DomainError("SymTensor2: dimension mismatch");
  }

  int dim_;
  std::array<double, 6> c_;
};

// Frobenius product a:b over the full matrices (off-diagonals counted twice).
double frob_inner(const SymTensor2& a, const SymTensor2& b);

// Fourth-order tensor with minor symmetries (maps SymTensor2 -> SymTensor2).
// Major symmetry <K a, b> = <a, K b> is a property of the stored entries,
// guaranteed by the provided constructors and checkable on random pairs.
class Tensor4 {
public:
  Tensor4() : dim_(0) {}
  explicit Tensor4(int dim) : dim_(dim), c_(static_cast<size_t>(dim * dim * dim * dim), 0.0) {
    if (dim < 1 || dim > 3) throw DomainError("Tensor4: dim must be in {1,2,3}");
  }

  // lambda * tr(a) Id + 2 mu * a
  static Tensor4 isotropic(int dim, double lambda, double mu);

  // Symmetric identity: maps any symmetric a to itself.
  static Tensor4 identity(int dim) { return isotropic(dim, 0.0, 0.5); }

  int dim() const { return dim_; }

  double operator()(int i, int j, int k, int l) const { return c_[flat(i, j, k, l)]; }
  double& operator()(int i, int j, int k, int l) { return c_[flat(i, j, k, l)]; }

  SymTensor2 apply(const SymTensor2& a) const;

  Tensor4& operator*=(double s) {
    for (auto& v : c_) v *= s;
    return *this;
  }
  friend Tensor4 operator*(Tensor4 t, double s) { return t *= s; }
  friend Tensor4 operator*(double s, Tensor4 t) { return t *= s; }

  double norm() const {
    double s = 0.0;
    for (double v : c_) s += v * v;
    return std::sqrt(s);
  }

private:
  size_t flat(int i, int j, int k, int l) const {
    return static_cast<size_t>(((i * dim_ + j) * dim_ + k) * dim_ + l);
  }
  int dim_;
  std::vector<double> c_;
};

// <K a, b> with K applied once.
double quad_form(const Tensor4& k, const SymTensor2& a, const SymTensor2& b);

// Admissible subspace S for the plastic strain.
struct SubspaceS {
  enum class Tag { FullSymmetric, Deviatoric };
  Tag tag = Tag::FullSymmetric;

  SymTensor2 project(const SymTensor2& a) const {
    if (tag == Tag::FullSymmetric) return a;
    SymTensor2 r = a;
    const double m = a.trace() / a.dim();
    for (int i = 0; i < a.dim(); ++i) r.comp(i) -= m;
    return r;
  }

  // Orthonormal basis (wrt the Frobenius product) of S within sym(d).
  std::vector<SymTensor2> basis(int dim) const;

  int num_components(int dim) const {
    const int full = dim * (dim + 1) / 2;
    if (tag == Tag::FullSymmetric) return full;
    return (dim == 1) ? 0 : full - 1;
  }
};

// Convex constraint set K inside S.
struct ConvexSetK {
  enum class Variant { AllOfS, FrobeniusBall };
  Variant variant = Variant::AllOfS;
  double radius = 1.0;

  // Caller projects onto S first; this only handles the convex constraint.
  SymTensor2 project(const SymTensor2& a) const {
    if (variant == Variant::AllOfS) return a;
    const double n = a.norm();
    if (n <= radius) return a;
    SymTensor2 r = a * (radius / n);
    // Guard against the rescale landing an ulp outside the ball.
    while (r.norm() > radius) r *= (1.0 - 1e-16);
    return r;
  }

  bool contains(const SymTensor2& a) const {
    return variant == Variant::AllOfS || a.norm() <= radius;
  }
};

SymTensor2 project_subspace(const SymTensor2& a, const SubspaceS& s);
SymTensor2 project_K(const SymTensor2& a, const ConvexSetK& k);
SymTensor2 apply_tensor4(const Tensor4& k, const SymTensor2& a);

}  // namespace dampl

#endif
