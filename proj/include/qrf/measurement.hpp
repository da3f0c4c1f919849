#pragma once

#include <vector>

#include "qrf/operator.hpp"
#include "qrf/quantum.hpp"

namespace qrf {

/// Interaction U on H_R ⊗ H_S, pointer observable E_R with pointer state ω_p,
/// and a total outcome map f from pointer readings to target sample points.
class MeasurementScheme {
 public:
  /// Throws ArgumentError for non-unitary U, a non-density pointer state,
  /// mismatched dimensions, or f not total into the target's sample space.
  /// With require_surjective, every target point must be hit by f.
  MeasurementScheme(Operator interaction, POVM pointer, Operator pointer_state,
                    std::vector<int> outcome_map, POVM target, bool require_surjective = false,
                    double tol = kDefaultTol);

  const Operator& interaction() const { return interaction_; }
  const POVM& pointer() const { return pointer_; }
  const Operator& pointer_state() const { return pointer_state_; }
  const std::vector<int>& outcome_map() const { return outcome_map_; }
  const POVM& target() const { return target_; }
  int pointer_dim() const { return pointer_.dim(); }
  int system_dim() const { return target_.dim(); }

  /// f^-1(x) as a list of pointer readings.
  std::vector<int> preimage(int x) const;

 private:
  Operator interaction_;
  POVM pointer_;
  Operator pointer_state_;
  std::vector<int> outcome_map_;
  POVM target_;
};

struct CheckResult {
  double max_deviation = 0.0;
  int trials = 0;
  bool pass = false;
};

/// Γ_{ω_p}(U (E_R(f^-1 x) ⊗ I) U*) = E_S(x) for every target point x.
CheckResult check_prc(const MeasurementScheme& scheme, double tol = kDefaultTol);

/// Largest entry of U - V U V* with V = U_R(g) ⊗ I, over g, with the maximizing
/// g. Zero exactly when U commutes with every V.
struct CommutationDefect {
  double max_deviation;
  int worst_element;
};
CommutationDefect commutation_defect(const MeasurementScheme& scheme, const UnitaryRep& pointer_rep);

/// Γ_{ω_h}(U (E_R(h.f^-1 x) ⊗ I) U*) = E_S(x) for all h and x, where ω_h =
/// U_R(h) ω_p U_R(h)* is the pointer state moved along with its readings.
/// Throws PreconditionError naming the worst g when U does not commute with
/// U_R(g) ⊗ I within tol.
CheckResult check_rrc(const MeasurementScheme& scheme, const UnitaryRep& pointer_rep,
                      double tol = kDefaultTol);

/// With ω localized at e: tr[(h.ω ⊗ ρ)(E_S * E_R)(h.x)] = tr[ρ E_S(x)] for every
/// h, x and each supplied ρ, in the state action h.ω = U(h)* ω U(h). Throws
/// UnsupportedFrameError for non-localizable or non-principal frames.
CheckResult rrc_relative_orientation(const Frame& frame, const Frame& system_frame,
                                     const std::vector<Operator>& states,
                                     double tol = kDefaultTol);

/// U|p, s> = |p s^-1, s> on L2(G) ⊗ L2(G). It commutes with U_R(g) ⊗ I for the
/// left-regular action on the pointer and copies the system's group element
/// into a pointer initially at e.
Operator relative_shift(const FiniteGroup& group);

/// The scheme (relative_shift, canonical PVM, |e><e|, f = id, canonical PVM)
/// for the left-regular representation of the group.
MeasurementScheme canonical_measurement_scheme(const FiniteGroup& group);

}  // namespace qrf
