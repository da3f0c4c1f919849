#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qrf/group.hpp"
#include "qrf/operator.hpp"

namespace qrf {

/// How a representation was built. canonical_pvm() only accepts the two
/// regular kinds, for which it knows the covariant projection-valued measure.
enum class RepKind { LeftRegular, LeftRight, CosetPermutation, Custom };

/// Unitary representation g -> U(g) of a finite group.
///
/// Matrices with exactly one unit-modulus entry per column (permutations with
/// phases) are stored in monomial form, so conjugations by them cost O(d^2)
/// and tensor products of such representations never densify.
class UnitaryRep {
 public:
  /// Validates U(e) = I, unitarity and U(gh) = U(g)U(h) within tol.
  static UnitaryRep from_matrices(const FiniteGroup& group, std::vector<Operator> matrices,
                                  RepKind kind = RepKind::Custom, double tol = kDefaultTol);

  const FiniteGroup& group() const { return group_; }
  int dim() const { return dim_; }
  RepKind kind() const { return kind_; }
  bool is_monomial() const { return !monomial_.empty(); }

  Operator matrix(int g) const;
  /// g.A = U(g) A U(g)*.
  Operator act_op(int g, const Operator& a) const;
  /// g.rho = U(g)* rho U(g).
  Operator act_state(int g, const Operator& rho) const;
  /// U(g) v.
  Vector apply(int g, const Vector& v) const;

  /// Diagonal representation g -> U_a(g) ⊗ U_b(g).
  friend UnitaryRep tensor(const UnitaryRep& a, const UnitaryRep& b);

 private:
  struct Monomial {
    std::vector<int> row;        // column j has its entry in row[j]
    std::vector<Complex> phase;  // value of that entry
  };

  UnitaryRep() = default;
  void check_element(int g) const;

  FiniteGroup group_ = cyclic_group(1);
  int dim_ = 0;
  RepKind kind_ = RepKind::Custom;
  std::vector<Operator> dense_;
  std::vector<Monomial> monomial_;
};

UnitaryRep tensor(const UnitaryRep& a, const UnitaryRep& b);
UnitaryRep tensor_all(const std::vector<UnitaryRep>& reps);

/// U(g)|h> = |gh>.
UnitaryRep left_regular_rep(const FiniteGroup& group);
/// U(g)|h> = |h g^-1>.
UnitaryRep left_right_rep(const FiniteGroup& group);
/// Permutation representation on the cosets, U(g)|c> = |g.c>.
UnitaryRep coset_permutation_rep(const CosetSpace& space);
UnitaryRep trivial_rep(const FiniteGroup& group, int dim);
UnitaryRep direct_sum(const UnitaryRep& a, const UnitaryRep& b);
/// g -> V U(g) V*, for unitary V.
UnitaryRep conjugated(const UnitaryRep& rep, const Operator& v);

inline Operator g_act_op(const UnitaryRep& rep, int g, const Operator& a) {
  return rep.act_op(g, a);
}
inline Operator g_act_state(const UnitaryRep& rep, int g, const Operator& rho) {
  return rep.act_state(g, rho);
}

/// Sample space of a POVM: the group itself (principal) or a coset space G/H.
class SampleSpace {
 public:
  explicit SampleSpace(const FiniteGroup& group) : space_(group) {}
  explicit SampleSpace(const CosetSpace& cosets) : space_(cosets) {}

  bool is_principal() const { return std::holds_alternative<FiniteGroup>(space_); }
  const FiniteGroup& group() const;
  /// Only valid for coset spaces.
  const CosetSpace& cosets() const { return std::get<CosetSpace>(space_); }
  int size() const;
  /// Left action g.x: multiplication on G, or the coset action.
  int act(int g, int x) const;

 private:
  std::variant<FiniteGroup, CosetSpace> space_;
};

/// Finite POVM: one effect per sample point, summing to the identity.
class POVM {
 public:
  /// Validates every effect (0 <= E <= I) and Σ E = I within tol.
  POVM(SampleSpace space, std::vector<Operator> effects, double tol = kDefaultTol);

  const SampleSpace& space() const { return space_; }
  const std::vector<Operator>& effects() const { return effects_; }
  const Operator& effect(int x) const { return effects_.at(x); }
  int size() const { return static_cast<int>(effects_.size()); }
  int dim() const { return static_cast<int>(effects_.front().rows()); }

  /// E(X) for a set of sample points.
  Operator effect_of(const std::vector<int>& points) const;

 private:
  SampleSpace space_;
  std::vector<Operator> effects_;
};

/// |g><g| for the left-regular representation, |g^-1><g^-1| for the
/// left-right one. Throws ArgumentError for any other kind.
POVM canonical_pvm(const UnitaryRep& rep);

/// Projections onto the coset basis vectors of coset_permutation_rep.
POVM coset_pvm(const CosetSpace& space);

/// Effects |φ(g)><φ(g)|/λ with φ(g) = U(g)φ. Throws ResolutionOfIdentityError
/// when Σ_g |φ(g)><φ(g)| is not λ·I within tol (deviation in operator norm).
POVM coherent_state_povm(const UnitaryRep& rep, const Vector& seed, double tol = kDefaultTol);

/// Largest |E(g.x) - U(g)E(x)U(g)*| over all g and sample points.
double covariance_deviation(const POVM& povm, const UnitaryRep& rep);
bool is_covariant(const POVM& povm, const UnitaryRep& rep, double tol = kDefaultTol);

struct FrameFlags {
  bool principal = false;
  bool sharp = false;
  bool ideal = false;
  bool localizable = false;
  bool complete = false;
};

/// Quantum reference frame: a representation with a covariant POVM and its
/// classification.
class Frame {
 public:
  const UnitaryRep& rep() const { return rep_; }
  const POVM& povm() const { return povm_; }
  const FrameFlags& flags() const { return flags_; }
  const Subgroup& isotropy() const { return isotropy_; }
  const FiniteGroup& group() const { return rep_.group(); }
  int dim() const { return rep_.dim(); }
  const Operator& effect(int x) const { return povm_.effect(x); }

  friend Frame classify_frame(const UnitaryRep& rep, const POVM& povm, double tol);

 private:
  Frame(UnitaryRep rep, POVM povm, FrameFlags flags, Subgroup isotropy)
      : rep_(std::move(rep)), povm_(std::move(povm)), flags_(flags), isotropy_(std::move(isotropy)) {}

  UnitaryRep rep_;
  POVM povm_;
  FrameFlags flags_;
  Subgroup isotropy_;
};

/// Throws ConstructionError if the POVM is not covariant under rep.
///
/// localizable is decided on singletons: for X ∋ x, E(X) >= E({x}) >= 0 so
/// ||E(X)|| >= ||E({x})||, and ||E(X)|| <= 1 always; hence every nonzero E(X)
/// has norm 1 exactly when every nonzero singleton effect does.
Frame classify_frame(const UnitaryRep& rep, const POVM& povm, double tol = kDefaultTol);

/// Convenience: rep + canonical PVM, classified.
Frame ideal_frame(const UnitaryRep& rep);

/// Pure state attaining tr[ρ E(x)] = ||E(x)|| = 1. Throws
/// UnsupportedFrameError for non-localizable frames.
Operator localizing_state(const Frame& frame, int x);
Vector localizing_vector(const Frame& frame, int x);

/// μ(x) = tr[ρ E(x)].
RealVector born(const POVM& povm, const Operator& rho);

}  // namespace qrf
