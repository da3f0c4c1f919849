#pragma once

#include <memory>
#include <vector>

#include "qrf/opequiv.hpp"
#include "qrf/quantum.hpp"

namespace qrf {

/// Frames R_1..R_N and a system S on H_1 ⊗ ... ⊗ H_N ⊗ H_S, all acted on by
/// the same group. Frames are indexed from 0; the system is the last factor
/// (dimension 1 when there is none).
class MultiFrameScenario {
 public:
  /// Throws ArgumentError on mixed groups, ConstructionError on non-principal frames.
  MultiFrameScenario(std::vector<Frame> frames, UnitaryRep system_rep);

  const FiniteGroup& group() const { return frames_.front().group(); }
  int frame_count() const { return static_cast<int>(frames_.size()); }
  const Frame& frame(int i) const;
  const std::vector<Frame>& frames() const { return frames_; }
  const UnitaryRep& system_rep() const { return system_; }
  int system_position() const { return frame_count(); }

  /// Factor dimensions of H_T.
  const FactorShape& shape() const { return shape_; }
  int total_dim() const { return shape_.total(); }
  /// U_1 ⊗ ... ⊗ U_N ⊗ U_S.
  UnitaryRep diagonal_rep() const;

  /// Factor positions of H_T other than frame j, in natural order.
  std::vector<int> complement(int j) const;
  FactorShape complement_shape(int j) const { return shape_.select(complement(j)); }
  /// Tensor product representation on the complement of frame j.
  UnitaryRep complement_rep(int j) const;
  /// Position of H_T factor `position` inside the complement of frame j.
  int position_in_complement(int j, int position) const;

 private:
  std::vector<Frame> frames_;
  UnitaryRep system_;
  FactorShape shape_;
};

/// R_j-relative states on the complement of frame j, compared through effects
/// E_k(x) ⊗ (anything on the other factors) for each k in `framed`.
std::shared_ptr<const EffectContext> relative_context(const MultiFrameScenario& scenario,
                                                      int reference, const std::vector<int>& framed);

/// The same classes seen from H_T: span of yen^{R_j}(E_k(x) ⊗ B_m), with B_m a
/// Hermitian basis of the factors other than j and k. Dense in dim(H_T)^2, so
/// only suitable for small scenarios.
EffectContext framed_relative_context(const MultiFrameScenario& scenario, int reference, int framed);

/// Places `factor` at H_T position `position` next to `rest`, which acts on the
/// remaining factors of `shape` in natural order.
Operator insert_factor(const Operator& rest, const Operator& factor, const FactorShape& shape,
                       int position);

/// yen^{R_j}_* of an operator on H_T: an operator on the complement of frame j.
Operator relative_state(const MultiFrameScenario& scenario, int reference, const Operator& omega);

/// ω ⊗ Ω^R with the frame as first factor, classified by invariant effects.
OperationalState lift(const Operator& omega, const Operator& relative,
                      std::shared_ptr<const EffectContext> invariant_context);

/// An R_reference-relative state known up to the effects framed by `framed`.
struct FramedRelativeState {
  int reference;
  std::vector<int> framed;
  OperationalState state;
};

FramedRelativeState make_relative_state(const MultiFrameScenario& scenario, int reference,
                                        const std::vector<int>& framed, const Operator& relative);

/// Localize frame `from` at `localize_at` (the identity by default), relativize
/// with respect to frame `to`. Operator on the complement of `to`. Throws
/// UnsupportedFrameError when frame `from` is not localizable.
Operator frame_change_representative(const MultiFrameScenario& scenario, int from, int to,
                                     const Operator& relative, int localize_at = -1);

/// The localized frame-change map on classes. The input must be R_from-relative
/// and framed by `to`; the output is R_to-relative and framed by `from` and by
/// every other frame the input was framed by.
FramedRelativeState frame_change(const MultiFrameScenario& scenario, int from, int to,
                                 const FramedRelativeState& input);

/// V = Σ_g |ξ_1(g)><ξ_2(g^-1)| ⊗ U_S(g) from H_2 ⊗ H_S to H_1 ⊗ H_S, where
/// ξ_i(g) = U_i(g) ξ_i(e) and E_i(g) = |ξ_i(g)><ξ_i(g)|. Frame 1 must be ideal
/// with rank-one effects, frame 2 must have rank-one effects (ideal or a
/// coherent-state system). V is an isometry, unitary when frame 2 is ideal.
Operator coherent_frame_change_isometry(const Frame& frame1, const Frame& frame2,
                                        const UnitaryRep& system_rep);
/// As above, additionally requiring frame 2 to be ideal.
Operator coherent_frame_change_unitary(const Frame& frame1, const Frame& frame2,
                                       const UnitaryRep& system_rep);

struct AgreementReport {
  Operator operational;  // frame_change_representative output
  Operator coherent;     // V Ω V*
  Operator luders;       // Σ_x (E_from(x) ⊗ I) V Ω V* (E_from(x) ⊗ I)
  double deviation;      // pairing deviation in the E_from-framed context
  double luders_deviation;  // entrywise |operational - luders|
  bool agree;
};

/// Compares the localized frame change from -> to with conjugation by the
/// coherent map, on an R_from-relative input. `context` may carry the
/// relative_context(scenario, to, {from}) to reuse across calls.
AgreementReport operational_agreement(const MultiFrameScenario& scenario, int from, int to,
                                      const Operator& relative, double tol = kDefaultTol,
                                      std::shared_ptr<const EffectContext> context = nullptr);

/// Pairing deviation between Φ_{i->k}(x) and Φ_{j->k}(Φ_{i->j}(x)) in the
/// context framed by frames i and j on the complement of k. Pass that context
/// to avoid rebuilding it on every call.
double compose_deviation(const MultiFrameScenario& scenario, int i, int j, int k,
                         const Operator& relative,
                         std::shared_ptr<const EffectContext> context = nullptr);

/// Σ_h μ(h) h.ρ_1 with μ the Born distribution of E_2 * E_1 in Ω (on H_1 ⊗ H_2).
Operator triangular_reconstruction(const Frame& frame1, const Frame& frame2,
                                   const UnitaryRep& system_rep, const Operator& relative1,
                                   const Operator& omega);
/// As above with E_2 * E_1 already computed.
Operator triangular_reconstruction(const POVM& relative_orientation, const UnitaryRep& system_rep,
                                   const Operator& relative1, const Operator& omega);

}  // namespace qrf
