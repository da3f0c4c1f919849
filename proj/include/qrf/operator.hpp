#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace qrf {

using Complex = std::complex<double>;
using Operator = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

inline constexpr double kDefaultTol = 1e-9;

/// Ordered tensor-factor dimensions of a composite Hilbert space.
struct FactorShape {
  std::vector<int> dims;

  FactorShape() = default;
  FactorShape(std::initializer_list<int> d) : dims(d) {}
  explicit FactorShape(std::vector<int> d) : dims(std::move(d)) {}

  int size() const { return static_cast<int>(dims.size()); }
  int total() const;
  /// The shape with the listed factor positions removed (order preserved).
  FactorShape without(const std::vector<int>& positions) const;
  /// The shape restricted to the listed positions, in the listed order.
  FactorShape select(const std::vector<int>& positions) const;

  friend bool operator==(const FactorShape&, const FactorShape&) = default;
};

/// (A ⊗ B)_{(i,k),(j,l)} = A_ij B_kl with the first factor's index major.
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> kron(
    const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(),
                                                             a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

/// Kronecker product of a list of square operators, left to right.
Operator kron_all(const std::vector<Operator>& factors);

/// Partial trace keeping the listed factor positions (in the listed order).
/// keep = {} yields the 1x1 matrix [tr A].
Operator partial_trace(const Operator& a, const FactorShape& shape, const std::vector<int>& keep);

/// Reorders tensor factors: factor perm[i] of the input becomes factor i of the
/// output. Returns the permuted operator; the new shape is shape.select(perm).
Operator permute_factors(const Operator& a, const FactorShape& shape, const std::vector<int>& perm);

/// Inverse of a factor permutation.
std::vector<int> inverse_permutation(const std::vector<int>& perm);

/// `a` acts on the factors of `shape` arranged in `order` (a permutation of
/// all positions); returns it with the factors in natural order.
Operator from_factor_order(const Operator& a, const FactorShape& shape, const std::vector<int>& order);

/// Places `a`, which acts on the factors listed in `positions` (in that order),
/// into the full space of `shape`, padding the remaining factors with identity.
Operator embed(const Operator& a, const FactorShape& shape, const std::vector<int>& positions);

/// Hermitian part (A + A†)/2.
template <typename Derived>
Operator hermitian_part(const Eigen::MatrixBase<Derived>& a) {
  return (a + a.adjoint()) / 2.0;
}

bool is_hermitian(const Operator& a, double tol = kDefaultTol);
/// Hermitian within tol and every eigenvalue of (A + A†)/2 at least -tol.
bool is_positive(const Operator& a, double tol = kDefaultTol);
/// Positive and every eigenvalue at most 1 + tol.
bool is_effect(const Operator& a, double tol = kDefaultTol);
/// Positive with |tr A - 1| <= tol.
bool is_density(const Operator& a, double tol = kDefaultTol);
bool is_unitary(const Operator& a, double tol = kDefaultTol);

/// tr[A† B].
template <typename DerivedA, typename DerivedB>
Complex hs_inner(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  return (a.adjoint() * b).trace();
}

/// tr[A B] without forming the product.
Complex trace_product(const Operator& a, const Operator& b);

/// Largest singular value.
double op_norm(const Operator& a);
/// Largest absolute entry; the deviation measure used by most checks.
double max_abs(const Operator& a);

/// Orthonormal (under tr[A B]) basis of the real space of Hermitian dim x dim
/// matrices: E_jj for each j, then for each j < k the pair
/// (E_jk + E_kj)/sqrt2 and i(E_jk - E_kj)/sqrt2.
class HermitianBasis {
 public:
  explicit HermitianBasis(int dim);

  int dim() const { return dim_; }
  int size() const { return dim_ * dim_; }
  Operator element(int k) const;
  std::vector<Operator> elements() const;

  /// Real coordinates tr[B_k A] of the Hermitian part of A, in basis order.
  RealVector coordinates(const Operator& a) const;
  /// Σ_k c_k B_k.
  Operator from_coordinates(const RealVector& c) const;

 private:
  int dim_;
};

inline HermitianBasis hermitian_basis(int dim) { return HermitianBasis(dim); }

}  // namespace qrf
