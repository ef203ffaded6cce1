#pragma once

#include <atomic>

#include "baire/problems.hpp"
#include "baire/transform.hpp"

namespace baire {

// A name-level realizer.
using Solver = StreamFn;

// Counts realizer invocations.
Solver counted(Solver g, std::shared_ptr<std::atomic<std::size_t>> calls);

// One loop step U∘⟨id×g⟩: ⟨q,p⟩ ↦ U_q(g(p)).
Stream loop_step(const Solver& g, const Stream& state);

Solver parallelize(Solver g);
// f⋆g = ⟨id×f⟩∘U∘⟨id×g⟩.
Solver comp_product(Solver f, Solver g);
// f^[0] = id, f^[1] = ⟨id×f⟩, f^[n+1] = ⟨id×f⟩∘U∘f^[n].
Solver power_n(Solver f, std::size_t n);
// Input: the exponent n as first symbol, then the payload.
Solver star(Solver f);
// p ↦ ⟨f^[0](p), f^[1](p), ...⟩.
Solver omega(Solver f);

enum class RunKind : std::uint8_t { successful, stalled, undetermined };
struct RunClass {
  RunKind kind = RunKind::undetermined;
  std::size_t k = 0;  // success or stall step; for undetermined, steps inspected without success
  friend bool operator==(const RunClass&, const RunClass&) = default;
};
std::string format_run_class(const RunClass& c);

// heads[i] is the head symbol of state i, or its miss: Miss::input means the
// state has no symbols at all (a stall), Miss::fuel that the budget ran out.
RunClass classify_heads(std::span<const Sym> heads);
RunClass classify_run(std::span<const Stream> states, std::uint64_t budget);

// One line per inspected state: `step i head h determined d calls c`.
struct TraceRecord {
  std::size_t step = 0;
  std::optional<Nat> head;
  std::size_t determined = 0;
  std::size_t calls = 0;
};
std::string format_trace(const TraceRecord& r);

struct DiamondResult {
  RunClass result;
  std::vector<Stream> states;
  std::vector<TraceRecord> trace;
  std::optional<Stream> output;  // q_k on success
};
// Iterates q_{i+1} = U∘⟨id×g⟩(q_i) until a head is 0, at most `max_steps` times.
DiamondResult diamond(const Solver& g, const Stream& q0, std::size_t max_steps, std::size_t depth,
                      std::uint64_t budget);

// ⟨q_0, q_1, ...⟩ with q_{i+1} = U∘⟨id×g⟩(q_i), built lazily.
Stream inverse_limit(const Solver& g, const Stream& q0);
Solver inverse_limit(Solver g);

// f ≤_W g via (K, H) with H⟨p, g(K(p))⟩ ⊢ f lifts to f^∞ ≤_sW g^∞:
// K_lift⟨q,p⟩ = ⟨K_1⟨q,p⟩, K(p)⟩ and H_lift reads the f-run back through the
// extractor H_1 of the injection K_1.
struct LiftedReduction {
  StreamFn K;
  StreamFn H;
  NameTransformer K1;
  StreamFn H1;
};
LiftedReduction lift_reduction_to_inverse_limit(StreamFn K, StreamFn H);

// F^∞ from F^ω for single-valued F: ⟨id×U×U×...⟩.
Stream infty_from_omega(const Stream& omega_output);

// F^ω ≤_sW F^∞: F^ω(x) = H(F^∞(K0(x))), with K an injection satisfying
// U_{K⟨⟨s,t⟩,q⟩}(r) = ⟨K⟨⟨q,r⟩,·⟩ × id⟩∘U⟨q,r⟩.
struct OmegaViaInfty {
  StreamFn K0;
  StreamFn H;
  NameTransformer K;
};
OmegaViaInfty sv_omega_to_infty();

// f̂^∞ ≤_sW f^∞: big-loop step ⟨i,n⟩ (Cantor order) runs step n of loop i.
struct ParallelViaInfty {
  StreamFn K;  // tuple of initial states ↦ initial big state
  StreamFn H;  // big run ↦ tuple of runs
};
ParallelViaInfty parallel_infty_to_infty();

// f^⋄ ≤_sW f^∞ for pointed f: after success the big loop keeps asking f
// about `point` and carries the successful state along.
struct DiamondViaInfty {
  StreamFn K;
  StreamFn H;
};
DiamondViaInfty diamond_to_infty(Stream point);

}  // namespace baire
