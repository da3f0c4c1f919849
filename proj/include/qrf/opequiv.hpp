#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "qrf/operator.hpp"
#include "qrf/quantum.hpp"

namespace qrf {

/// Singular values below this fraction of the largest one count as zero.
inline constexpr double kRankCutoff = 1e-9;

/// A finite set O of Hermitian effects together with its real span.
///
/// All linear algebra happens in the real dim^2-dimensional space of Hermitian
/// matrices, via HermitianBasis coordinates. The span is kept as a matrix with
/// orthonormal columns; its orthogonal projector is the canonical quotient map
/// onto class representatives.
class EffectContext {
 public:
  /// Span of the generators. Throws ArgumentError for non-Hermitian or
  /// mismatched generators. An empty list gives the zero context on `dim`.
  static EffectContext from_generators(int dim, std::vector<Operator> generators,
                                       bool keep_generators = true);
  /// Context with a given orthonormal coordinate basis (columns).
  static EffectContext from_span_basis(int dim, RealMatrix basis, int generator_count);

  int dim() const { return dim_; }
  int rank() const { return static_cast<int>(basis_.cols()); }
  int kernel_dim() const { return dim_ * dim_ - rank(); }
  int generator_count() const { return generator_count_; }
  /// Empty when the context was built without keeping generators.
  const std::vector<Operator>& generators() const { return generators_; }

  /// Orthonormal coordinate basis of the span, one column per element.
  const RealMatrix& span_basis() const { return basis_; }
  std::vector<Operator> span_operators() const;
  /// dim^2 x dim^2 orthogonal projector onto the span (in coordinates).
  RealMatrix projector() const;

  RealVector coordinates(const Operator& a) const;
  Operator project(const Operator& a) const;
  /// ||a - project(a)||_HS.
  double residual(const Operator& a) const;
  bool contains(const Operator& a, double tol = kDefaultTol) const;

  /// max_k |tr[(a - b) S_k]| over the orthonormal span basis.
  double pairing_deviation(const Operator& a, const Operator& b) const;
  /// max_F |tr[(a - b) F]| over the stored generators.
  double generator_deviation(const Operator& a, const Operator& b) const;

 private:
  EffectContext(int dim, RealMatrix basis, std::vector<Operator> generators, int count)
      : dim_(dim), basis_(std::move(basis)), generators_(std::move(generators)),
        generator_count_(count) {}

  int dim_;
  RealMatrix basis_;
  std::vector<Operator> generators_;
  int generator_count_;
};

inline EffectContext make_context(int dim, std::vector<Operator> generators) {
  return EffectContext::from_generators(dim, std::move(generators));
}

/// |tr[(Ω - Ω')F]| <= tol for all F in the span (orthonormal basis).
bool equivalent(const EffectContext& ctx, const Operator& a, const Operator& b,
                double tol = kDefaultTol);

/// HS-orthogonal projection onto the span; equal for exactly the equivalent inputs.
Operator canonical_repr(const EffectContext& ctx, const Operator& a);

/// Representative of an operational class [Ω]_O.
struct OperationalState {
  Operator representative;
  std::shared_ptr<const EffectContext> context;

  Operator canonical() const { return canonical_repr(*context, representative); }
  bool equivalent_to(const Operator& other, double tol = kDefaultTol) const {
    return equivalent(*context, representative, other, tol);
  }
};

/// (1/|G|) Σ_g U(g) A U(g)*.
Operator g_twirl(const UnitaryRep& rep, const Operator& a);
/// (1/|G|) Σ_g U(g)* ρ U(g); equal to g_twirl for finite groups.
Operator g_twirl_predual(const UnitaryRep& rep, const Operator& rho);

/// Fixed space of the twirl on Hermitian operators.
EffectContext invariant_subspace(const UnitaryRep& rep);

/// A POVM acting on one tensor factor, for framed contexts.
struct FramedFactor {
  int position;
  const POVM* povm;
};

/// Span of E_1(x_1) ⊗ ... ⊗ E_m(x_m) ⊗ B_k with the POVMs on their factors
/// and B_k running over a Hermitian basis of the remaining factors jointly.
EffectContext framed_subspace(const FactorShape& shape, const std::vector<FramedFactor>& framed);
/// Frame on the first factor, system of the given dimension on the second.
EffectContext framed_subspace(const Frame& frame, int system_dim);

/// Span intersection. Directions of ctx1's span whose distance to ctx2's span is
/// at most kRankCutoff (spans are orthonormal, so this cutoff is absolute).
EffectContext intersect(const EffectContext& a, const EffectContext& b);

/// Largest HS residual of a's span elements against b's span (0 means a ⊆ b).
double inclusion_residual(const EffectContext& a, const EffectContext& b);

}  // namespace qrf
