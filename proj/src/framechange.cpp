#include "qrf/framechange.hpp"

#include <algorithm>
#include <cmath>

#include "qrf/error.hpp"
#include "qrf/relativize.hpp"

namespace qrf {

MultiFrameScenario::MultiFrameScenario(std::vector<Frame> frames, UnitaryRep system_rep)
    : frames_(std::move(frames)), system_(std::move(system_rep)) {
  if (frames_.empty()) throw ArgumentError("scenario: at least one frame is required");
  for (size_t i = 0; i < frames_.size(); ++i) {
    if (!(frames_[i].group() == frames_.front().group())) {
      throw ArgumentError("scenario: frame " + std::to_string(i) + " uses a different group");
    }
    if (!frames_[i].flags().principal) {
      throw ConstructionError("scenario: frame " + std::to_string(i) + " is not principal");
    }
  }
  if (!(system_.group() == frames_.front().group())) {
    throw ArgumentError("scenario: system representation uses a different group");
  }
  for (const auto& f : frames_) shape_.dims.push_back(f.dim());
  shape_.dims.push_back(system_.dim());
}

const Frame& MultiFrameScenario::frame(int i) const {
  if (i < 0 || i >= frame_count()) {
    throw ArgumentError("scenario: frame index " + std::to_string(i) + " out of range");
  }
  return frames_[i];
}

UnitaryRep MultiFrameScenario::diagonal_rep() const {
  std::vector<UnitaryRep> reps;
  for (const auto& f : frames_) reps.push_back(f.rep());
  reps.push_back(system_);
  return tensor_all(reps);
}

std::vector<int> MultiFrameScenario::complement(int j) const {
  frame(j);
  std::vector<int> out;
  for (int i = 0; i < shape_.size(); ++i) {
    if (i != j) out.push_back(i);
  }
  return out;
}

UnitaryRep MultiFrameScenario::complement_rep(int j) const {
  std::vector<UnitaryRep> reps;
  for (int i : complement(j)) reps.push_back(i == system_position() ? system_ : frames_[i].rep());
  return tensor_all(reps);
}

int MultiFrameScenario::position_in_complement(int j, int position) const {
  frame(j);
  if (position == j || position < 0 || position >= shape_.size()) {
    throw ArgumentError("scenario: factor " + std::to_string(position) +
                        " is not in the complement of frame " + std::to_string(j));
  }
  return position < j ? position : position - 1;
}

std::shared_ptr<const EffectContext> relative_context(const MultiFrameScenario& scenario,
                                                      int reference,
                                                      const std::vector<int>& framed) {
  std::vector<FramedFactor> factors;
  for (int k : framed) {
    factors.push_back({scenario.position_in_complement(reference, k), &scenario.frame(k).povm()});
  }
  return std::make_shared<const EffectContext>(
      framed_subspace(scenario.complement_shape(reference), factors));
}

EffectContext framed_relative_context(const MultiFrameScenario& scenario, int reference,
                                      int framed) {
  const FactorShape cshape = scenario.complement_shape(reference);
  const int p = scenario.position_in_complement(reference, framed);
  std::vector<int> order = {p};
  for (int i = 0; i < cshape.size(); ++i) {
    if (i != p) order.push_back(i);
  }
  const HermitianBasis rest(cshape.total() / cshape.dims[p]);
  const YenMap map(scenario.frame(reference), scenario.complement_rep(reference));

  std::vector<int> global_order = {reference};
  for (int i : scenario.complement(reference)) global_order.push_back(i);

  std::vector<Operator> generators;
  for (const auto& e : scenario.frame(framed).povm().effects()) {
    for (int m = 0; m < rest.size(); ++m) {
      const Operator local = from_factor_order(kron(e, rest.element(m)), cshape, order);
      generators.push_back(from_factor_order(map.apply(local), scenario.shape(), global_order));
    }
  }
  return EffectContext::from_generators(scenario.total_dim(), std::move(generators));
}

Operator insert_factor(const Operator& rest, const Operator& factor, const FactorShape& shape,
                       int position) {
  std::vector<int> order = {position};
  for (int i = 0; i < shape.size(); ++i) {
    if (i != position) order.push_back(i);
  }
  if (factor.rows() != shape.dims.at(position) ||
      rest.rows() * factor.rows() != shape.total()) {
    throw ArgumentError("insert_factor: operator dimensions do not match the factor shape");
  }
  return from_factor_order(kron(factor, rest), shape, order);
}

Operator relative_state(const MultiFrameScenario& scenario, int reference, const Operator& omega) {
  std::vector<int> order = {reference};
  for (int i : scenario.complement(reference)) order.push_back(i);
  const Operator arranged = permute_factors(omega, scenario.shape(), order);
  return YenMap(scenario.frame(reference), scenario.complement_rep(reference)).predual(arranged);
}

OperationalState lift(const Operator& omega, const Operator& relative,
                      std::shared_ptr<const EffectContext> invariant_context) {
  Operator rep = kron(omega, relative);
  if (invariant_context && invariant_context->dim() != rep.rows()) {
    throw ArgumentError("lift: context dimension does not match the lifted state");
  }
  return {std::move(rep), std::move(invariant_context)};
}

FramedRelativeState make_relative_state(const MultiFrameScenario& scenario, int reference,
                                        const std::vector<int>& framed, const Operator& relative) {
  auto ctx = relative_context(scenario, reference, framed);
  if (relative.rows() != ctx->dim() || relative.cols() != ctx->dim()) {
    throw ArgumentError("relative state: operator does not act on the complement of the reference");
  }
  return {reference, framed, {relative, std::move(ctx)}};
}

Operator frame_change_representative(const MultiFrameScenario& scenario, int from, int to,
                                     const Operator& relative, int localize_at) {
  if (from == to) throw ArgumentError("frame_change: source and target frame coincide");
  const Frame& source = scenario.frame(from);
  scenario.frame(to);
  const int x = localize_at < 0 ? scenario.group().identity() : localize_at;
  const Operator omega = localizing_state(source, x);
  const Operator global = insert_factor(relative, omega, scenario.shape(), from);
  return relative_state(scenario, to, global);
}

FramedRelativeState frame_change(const MultiFrameScenario& scenario, int from, int to,
                                 const FramedRelativeState& input) {
  if (input.reference != from) {
    throw ArgumentError("frame_change: input is not relative to the source frame");
  }
  if (std::find(input.framed.begin(), input.framed.end(), to) == input.framed.end()) {
    throw ArgumentError("frame_change: input is not framed by the target frame");
  }
  std::vector<int> framed = {from};
  for (int k : input.framed) {
    if (k != to && k != from) framed.push_back(k);
  }
  std::sort(framed.begin(), framed.end());
  const Operator out = frame_change_representative(scenario, from, to, input.state.representative);
  return make_relative_state(scenario, to, framed, out);
}

namespace {

// ξ(e) with E(e) = |ξ(e)><ξ(e)|, after checking every effect is U(g)|ξ(e)><ξ(e)|U(g)*.
Vector rank_one_seed(const Frame& frame, const char* which) {
  const int e = frame.group().identity();
  Eigen::SelfAdjointEigenSolver<Operator> solver(hermitian_part(frame.effect(e)));
  const Eigen::Index top = solver.eigenvalues().size() - 1;
  const Vector xi = std::sqrt(std::max(solver.eigenvalues()(top), 0.0)) * solver.eigenvectors().col(top);
  for (int g = 0; g < frame.group().order(); ++g) {
    const Vector v = frame.rep().apply(g, xi);
    if (max_abs(v * v.adjoint() - frame.effect(g)) > 1e-8) {
      throw UnsupportedFrameError(std::string("coherent frame change: ") + which +
                                  " frame does not have rank-one effects");
    }
  }
  return xi;
}

}  // namespace

Operator coherent_frame_change_isometry(const Frame& frame1, const Frame& frame2,
                                        const UnitaryRep& system_rep) {
  if (!(frame1.group() == frame2.group()) || !(frame1.group() == system_rep.group())) {
    throw ArgumentError("coherent frame change: frames and system use different groups");
  }
  if (!frame1.flags().ideal) throw UnsupportedFrameError("coherent frame change: first frame is not ideal");
  if (!frame2.flags().principal) {
    throw UnsupportedFrameError("coherent frame change: second frame is not principal");
  }
  const Vector xi1 = rank_one_seed(frame1, "first");
  const Vector xi2 = rank_one_seed(frame2, "second");
  const FiniteGroup& group = frame1.group();
  const int ds = system_rep.dim();
  Operator v = Operator::Zero(frame1.dim() * ds, frame2.dim() * ds);
  for (int g = 0; g < group.order(); ++g) {
    const Operator ket_bra = frame1.rep().apply(g, xi1) *
                             frame2.rep().apply(group.inverse(g), xi2).adjoint();
    v += kron(ket_bra, system_rep.matrix(g));
  }
  return v;
}

Operator coherent_frame_change_unitary(const Frame& frame1, const Frame& frame2,
                                       const UnitaryRep& system_rep) {
  if (!frame2.flags().ideal) {
    throw UnsupportedFrameError("coherent frame change: second frame is not ideal");
  }
  return coherent_frame_change_isometry(frame1, frame2, system_rep);
}

AgreementReport operational_agreement(const MultiFrameScenario& scenario, int from, int to,
                                      const Operator& relative, double tol,
                                      std::shared_ptr<const EffectContext> context) {
  const Operator operational = frame_change_representative(scenario, from, to, relative);

  // Arrange the input as H_to ⊗ rest, the others in natural order.
  const FactorShape in_shape = scenario.complement_shape(from);
  const int p = scenario.position_in_complement(from, to);
  std::vector<int> in_order = {p};
  for (int i = 0; i < in_shape.size(); ++i) {
    if (i != p) in_order.push_back(i);
  }
  std::vector<UnitaryRep> rest;
  for (int i = 0; i < scenario.shape().size(); ++i) {
    if (i == from || i == to) continue;
    rest.push_back(i == scenario.system_position() ? scenario.system_rep() : scenario.frame(i).rep());
  }
  const Operator v = coherent_frame_change_isometry(scenario.frame(from), scenario.frame(to),
                                                    tensor_all(rest));
  const Operator arranged = permute_factors(relative, in_shape, in_order);
  const Operator conjugated = v * arranged * v.adjoint();

  const FactorShape out_shape = scenario.complement_shape(to);
  const int q = scenario.position_in_complement(to, from);
  std::vector<int> out_order = {q};
  for (int i = 0; i < out_shape.size(); ++i) {
    if (i != q) out_order.push_back(i);
  }
  Operator coherent = from_factor_order(conjugated, out_shape, out_order);

  Operator luders = Operator::Zero(coherent.rows(), coherent.cols());
  for (const auto& e : scenario.frame(from).povm().effects()) {
    const Operator p_x = embed(e, out_shape, {q});
    luders += p_x * coherent * p_x;
  }

  const auto ctx = context ? context : relative_context(scenario, to, {from});
  AgreementReport report{operational, std::move(coherent), std::move(luders), 0.0, 0.0, false};
  report.deviation = ctx->pairing_deviation(report.operational, report.coherent);
  report.luders_deviation = max_abs(report.operational - report.luders);
  report.agree = report.deviation <= tol;
  return report;
}

double compose_deviation(const MultiFrameScenario& scenario, int i, int j, int k,
                         const Operator& relative,
                         std::shared_ptr<const EffectContext> context) {
  if (i == j || j == k || i == k) throw ArgumentError("compose: frames must be distinct");
  const Operator direct = frame_change_representative(scenario, i, k, relative);
  const Operator via = frame_change_representative(
      scenario, j, k, frame_change_representative(scenario, i, j, relative));
  if (!context) {
    std::vector<int> framed = {i, j};
    std::sort(framed.begin(), framed.end());
    context = relative_context(scenario, k, framed);
  }
  return context->pairing_deviation(direct, via);
}

Operator triangular_reconstruction(const Frame& frame1, const Frame& frame2,
                                   const UnitaryRep& system_rep, const Operator& relative1,
                                   const Operator& omega) {
  if (!(frame1.group() == system_rep.group())) {
    throw ArgumentError("triangular_reconstruction: system uses a different group");
  }
  if (relative1.rows() != system_rep.dim() || relative1.cols() != system_rep.dim()) {
    throw ArgumentError("triangular_reconstruction: relative state does not match the system");
  }
  return triangular_reconstruction(relative_orientation(frame1, frame2), system_rep, relative1, omega);
}

Operator triangular_reconstruction(const POVM& relative_orientation, const UnitaryRep& system_rep,
                                   const Operator& relative1, const Operator& omega) {
  if (relative1.rows() != system_rep.dim() || relative1.cols() != system_rep.dim()) {
    throw ArgumentError("triangular_reconstruction: relative state does not match the system");
  }
  const RealVector mu = born(relative_orientation, omega);
  Operator out = Operator::Zero(relative1.rows(), relative1.cols());
  for (int h = 0; h < system_rep.group().order(); ++h) {
    if (mu(h) != 0.0) out += mu(h) * system_rep.act_state(h, relative1);
  }
  return out;
}

}  // namespace qrf
