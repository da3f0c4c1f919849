#include "qrf/operator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qrf/error.hpp"

namespace qrf {

int FactorShape::total() const {
  return std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>());
}

FactorShape FactorShape::without(const std::vector<int>& positions) const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i) {
    if (std::find(positions.begin(), positions.end(), i) == positions.end()) out.push_back(dims[i]);
  }
  return FactorShape(std::move(out));
}

FactorShape FactorShape::select(const std::vector<int>& positions) const {
  std::vector<int> out;
  out.reserve(positions.size());
  for (int p : positions) out.push_back(dims.at(p));
  return FactorShape(std::move(out));
}

namespace {

void check_shape(const Operator& a, const FactorShape& shape, const char* op) {
  if (a.rows() != a.cols()) throw ArgumentError(std::string(op) + ": operator is not square");
  if (shape.total() != a.rows()) {
    throw ArgumentError(std::string(op) + ": factor shape total " + std::to_string(shape.total()) +
                        " does not match operator dimension " + std::to_string(a.rows()));
  }
  for (int d : shape.dims) {
    if (d < 1) throw ArgumentError(std::string(op) + ": factor dimensions must be positive");
  }
}

void check_positions(const std::vector<int>& positions, int n, const char* op) {
  std::vector<char> seen(n, 0);
  for (int p : positions) {
    if (p < 0 || p >= n || seen[p]) {
      throw ArgumentError(std::string(op) + ": invalid or repeated factor position " +
                          std::to_string(p));
    }
    seen[p] = 1;
  }
}

std::vector<int> strides(const FactorShape& shape) {
  std::vector<int> s(shape.size(), 1);
  for (int i = shape.size() - 2; i >= 0; --i) s[i] = s[i + 1] * shape.dims[i + 1];
  return s;
}

// Flat indices (into the full space) of every multi-index over `positions`,
// enumerated with the first listed position most significant.
std::vector<int> flat_offsets(const FactorShape& shape, const std::vector<int>& positions) {
  const auto st = strides(shape);
  std::vector<int> out = {0};
  for (int p : positions) {
    std::vector<int> next;
    next.reserve(out.size() * shape.dims[p]);
    for (int base : out) {
      for (int i = 0; i < shape.dims[p]; ++i) next.push_back(base + i * st[p]);
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace

Operator kron_all(const std::vector<Operator>& factors) {
  Operator out = Operator::Identity(1, 1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

Operator partial_trace(const Operator& a, const FactorShape& shape, const std::vector<int>& keep) {
  check_shape(a, shape, "partial_trace");
  check_positions(keep, shape.size(), "partial_trace");
  std::vector<int> traced;
  for (int i = 0; i < shape.size(); ++i) {
    if (std::find(keep.begin(), keep.end(), i) == keep.end()) traced.push_back(i);
  }
  const auto kept_off = flat_offsets(shape, keep);
  const auto traced_off = flat_offsets(shape, traced);
  const int k = static_cast<int>(kept_off.size());
  Operator out = Operator::Zero(k, k);
  for (int t : traced_off) {
    for (int j = 0; j < k; ++j) {
      for (int i = 0; i < k; ++i) out(i, j) += a(kept_off[i] + t, kept_off[j] + t);
    }
  }
  return out;
}

Operator permute_factors(const Operator& a, const FactorShape& shape,
                         const std::vector<int>& perm) {
  check_shape(a, shape, "permute_factors");
  if (static_cast<int>(perm.size()) != shape.size()) {
    throw ArgumentError("permute_factors: permutation length does not match factor count");
  }
  check_positions(perm, shape.size(), "permute_factors");
  const auto map = flat_offsets(shape, perm);
  const int n = static_cast<int>(map.size());
  Operator out(n, n);
  for (int c = 0; c < n; ++c) {
    for (int r = 0; r < n; ++r) out(r, c) = a(map[r], map[c]);
  }
  return out;
}

std::vector<int> inverse_permutation(const std::vector<int>& perm) {
  std::vector<int> inv(perm.size());
  for (int i = 0; i < static_cast<int>(perm.size()); ++i) inv.at(perm[i]) = i;
  return inv;
}

Operator from_factor_order(const Operator& a, const FactorShape& shape,
                           const std::vector<int>& order) {
  return permute_factors(a, shape.select(order), inverse_permutation(order));
}

Operator embed(const Operator& a, const FactorShape& shape, const std::vector<int>& positions) {
  check_positions(positions, shape.size(), "embed");
  const FactorShape inner = shape.select(positions);
  if (a.rows() != inner.total() || a.cols() != inner.total()) {
    throw ArgumentError("embed: operator dimension does not match the selected factors");
  }
  std::vector<int> order = positions;
  for (int i = 0; i < shape.size(); ++i) {
    if (std::find(positions.begin(), positions.end(), i) == positions.end()) order.push_back(i);
  }
  const int rest = shape.total() / inner.total();
  const Operator product = kron(a, Operator::Identity(rest, rest));
  return from_factor_order(product, shape, order);
}

bool is_hermitian(const Operator& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return max_abs(a - a.adjoint()) <= tol;
}

namespace {

Eigen::VectorXd hermitian_eigenvalues(const Operator& a) {
  Operator off = a;
  off.diagonal().setZero();
  if (off.isZero(0.0)) return a.diagonal().real();
  Eigen::SelfAdjointEigenSolver<Operator> solver(hermitian_part(a), Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

}  // namespace

bool is_positive(const Operator& a, double tol) {
  if (!is_hermitian(a, tol)) return false;
  if (a.size() == 0) return true;
  return hermitian_eigenvalues(a).minCoeff() >= -tol;
}

bool is_effect(const Operator& a, double tol) {
  if (!is_hermitian(a, tol)) return false;
  if (a.size() == 0) return true;
  const auto ev = hermitian_eigenvalues(a);
  return ev.minCoeff() >= -tol && ev.maxCoeff() <= 1.0 + tol;
}

bool is_density(const Operator& a, double tol) {
  return is_positive(a, tol) && std::abs(a.trace() - Complex(1.0)) <= tol;
}

bool is_unitary(const Operator& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return max_abs(a * a.adjoint() - Operator::Identity(a.rows(), a.cols())) <= tol;
}

Complex trace_product(const Operator& a, const Operator& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) {
    throw ArgumentError("trace_product: dimension mismatch");
  }
  return (a.transpose().array() * b.array()).sum();
}

double op_norm(const Operator& a) {
  if (a.size() == 0) return 0.0;
  if (is_hermitian(a, 0.0)) return hermitian_eigenvalues(a).cwiseAbs().maxCoeff();
  Eigen::JacobiSVD<Operator> svd(a);
  return svd.singularValues()(0);
}

double max_abs(const Operator& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

HermitianBasis::HermitianBasis(int dim) : dim_(dim) {
  if (dim < 1) throw ArgumentError("hermitian_basis: dimension must be positive");
}

Operator HermitianBasis::element(int k) const {
  if (k < 0 || k >= size()) throw ArgumentError("hermitian basis index out of range");
  Operator b = Operator::Zero(dim_, dim_);
  if (k < dim_) {
    b(k, k) = 1.0;
    return b;
  }
  const int pair = (k - dim_) / 2;
  const bool imaginary = (k - dim_) % 2 == 1;
  // pair enumerates j < l row by row
  int j = 0, offset = pair;
  while (offset >= dim_ - 1 - j) {
    offset -= dim_ - 1 - j;
    ++j;
  }
  const int l = j + 1 + offset;
  const double s = 1.0 / std::sqrt(2.0);
  if (imaginary) {
    b(j, l) = Complex(0, s);
    b(l, j) = Complex(0, -s);
  } else {
    b(j, l) = s;
    b(l, j) = s;
  }
  return b;
}

std::vector<Operator> HermitianBasis::elements() const {
  std::vector<Operator> out;
  out.reserve(size());
  for (int k = 0; k < size(); ++k) out.push_back(element(k));
  return out;
}

RealVector HermitianBasis::coordinates(const Operator& a) const {
  if (a.rows() != dim_ || a.cols() != dim_) {
    throw ArgumentError("hermitian basis coordinates: dimension mismatch");
  }
  RealVector c(size());
  const double r2 = std::sqrt(2.0);
  for (int j = 0; j < dim_; ++j) c(j) = a(j, j).real();
  int k = dim_;
  for (int j = 0; j < dim_; ++j) {
    for (int l = j + 1; l < dim_; ++l) {
      const Complex h = (a(j, l) + std::conj(a(l, j))) / 2.0;
      c(k++) = r2 * h.real();
      c(k++) = r2 * h.imag();
    }
  }
  return c;
}

Operator HermitianBasis::from_coordinates(const RealVector& c) const {
  if (c.size() != size()) throw ArgumentError("hermitian basis: coordinate length mismatch");
  Operator a = Operator::Zero(dim_, dim_);
  const double s = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < dim_; ++j) a(j, j) = c(j);
  int k = dim_;
  for (int j = 0; j < dim_; ++j) {
    for (int l = j + 1; l < dim_; ++l) {
      const Complex v(s * c(k), s * c(k + 1));
      a(j, l) = v;
      a(l, j) = std::conj(v);
      k += 2;
    }
  }
  return a;
}

}  // namespace qrf
