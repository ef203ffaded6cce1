#pragma once

#include "baire/operators.hpp"

namespace baire {

// One seeded instance of the problem a witness solves.
struct Case {
  std::uint64_t seed = 0;
  Stream input;
  // Witness-blind; reads at most `depth` symbols of each public stream and
  // charges output reads to `fuel`.
  std::function<Verdict(const Stream& output, std::size_t depth, Fuel& fuel)> check;
  // Nondeterministic witnesses only: advice known to be helpful, taken from
  // the generator's secrets.
  std::optional<Stream> helpful_advice;
  // Sierpiński output positions to inspect so that every public symbol the
  // checker reads at `depth` is covered.
  std::function<std::size_t(std::size_t depth)> flag_depth = [](std::size_t d) { return d; };
  // False when a negative control cannot be refuted on this instance.
  std::function<bool(std::size_t depth)> applicable = [](std::size_t) { return true; };
};
using Suite = std::function<Case(std::uint64_t seed)>;

struct CheckRecord {
  std::uint64_t seed = 0;
  std::size_t depth = 0;
  Verdict verdict = Verdict::consistent;
  std::string detail;
};

struct CheckReport {
  static constexpr std::string_view kDisclaimer = "no-refutation-through-depth-is-evidence-not-proof";

  std::string witness;
  std::vector<CheckRecord> records;  // sorted by seed
  std::uint64_t fuel = 0;            // fuel spent reading checked outputs
  std::size_t applicable = 0;        // seeds a negative control can be refuted on

  std::size_t count(Verdict v) const;
  // Records `check ...` per seed, then one summary line.
  std::string format() const;
};

// K : f-input ↦ g-input, H : g-output ↦ f-output (strong) or ⟨f-input, g-output⟩ ↦ f-output.
struct ReductionWitness {
  std::string name;
  StreamFn K;
  StreamFn H;
  bool strong = false;
  // Interprets K's output on a registered f-instance as a g-instance, so the
  // oracle realizer of g can answer it. Unset when K's outputs need none.
  std::function<Instance(const Instance& f_instance, const Stream& k_output)> translate;
};

struct TranslationMissing : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// K wrapped so that every output on a registered input is registered too.
StreamFn translating(const ReductionWitness& w);

CheckReport check_reduction(const Suite& f_suite, const Solver& g_realizer, const ReductionWitness& w,
                            std::span<const std::uint64_t> seeds, std::size_t depth);

struct AdviceSpace {
  std::string name;
  std::function<Stream(std::uint64_t seed)> sample;
};

// f ≤_W C_A: F2⟨p,r⟩ stays 0̂ for helpful advice r, and F1⟨p,r⟩ solves p
// whenever F2⟨p,r⟩ = 0̂.
struct NonDetWitness {
  std::string name;
  StreamFn F1;
  StreamFn F2;
  AdviceSpace advice;
  bool unique = false;
};

// Run of the lifted computation on ⟨⟨q_0,p_0⟩, ⟨r_0,r_1,...⟩⟩:
// ⟨q_{i+1},p_{i+1}⟩ = U∘⟨id×F1⟩⟨q_i,⟨p_i,r_i⟩⟩. Logs advice reads.
class AdviceRun {
 public:
  AdviceRun(StreamFn F1, Stream q0, Stream advice);
  Stream state(Index i) const;
  std::vector<Index> consulted() const;

 private:
  StreamFn F1_;
  Stream advice_;
  mutable std::recursive_mutex mu_;
  mutable std::vector<Stream> states_;
  mutable std::vector<Index> consulted_;
};

// The witness for f^∞ over A^ℕ: G1 yields the run, G2 goes nonzero once some
// F2⟨p_i,r_i⟩ does (position ⟨i,n⟩ reports symbol n of check i).
NonDetWitness nondet_lift_inverse_limit(const NonDetWitness& w);

struct NonDetOptions {
  std::size_t adversarial = 4;
  std::uint64_t budget = 1'000'000;
};
CheckReport check_nondet(const NonDetWitness& w, const Suite& suite, std::span<const std::uint64_t> seeds,
                         std::size_t depth, const NonDetOptions& opts = {});

// lim_ℕ loops with controlled mind changes. Data off the true path never
// changes its guess.
struct MindChange {
  std::size_t level = 0;
  Index position = 0;  // first stage showing the new value
  Nat value = 0;
  friend bool operator==(const MindChange&, const MindChange&) = default;
};
struct LimLoop {
  std::shared_ptr<const Loop> loop;
  std::vector<MindChange> changes;
};
// Seeded: at most three changes over the first `length` levels.
LimLoop limN_loop(std::uint64_t seed, std::size_t length);
LimLoop limN_loop(std::uint64_t seed, std::size_t length, std::vector<MindChange> changes);

struct Revision {
  Index stage = 0;
  std::size_t level = 0;
  Nat from = 0;
  Nat to = 0;
};
struct LimSim {
  Word history;               // final guesses, one per level
  std::vector<Revision> trace;
  std::size_t restarts = 0;
  std::size_t stages = 0;
  bool stabilized = false;    // no revision during the last half of the stages
  std::vector<Stream> run;    // states along `history`
};
// Guess every p_i constant at its latest value; a change at level i restarts
// the levels below it.
LimSim limN_infty_via_lim(const Loop& loop, std::size_t levels, std::size_t stages);
std::string format_revision(const Revision& r);

// Loop files:
//   loop <problem> seed <n> [length <L>]
//   change <level> <position> <value>     (limN only)
//   changes none                          (limN only: no mind changes)
struct LoopSpec {
  std::string problem;
  std::uint64_t seed = 0;
  std::size_t length = Loop::kEndless;
  std::optional<std::vector<MindChange>> changes;  // limN: unset means seeded
};
LoopSpec parse_loop_spec(std::string_view text);
std::string format_loop_spec(const LoopSpec& spec);
std::shared_ptr<const Loop> make_loop(const LoopSpec& spec);

struct CheckOptions {
  std::size_t seeds = 0;  // 0: the entry's default
  std::uint64_t first_seed = 0;
  std::size_t depth = 0;  // 0: the entry's default
};

struct LibraryEntry {
  std::string name;
  std::string summary;
  std::size_t default_seeds = 100;
  std::size_t default_depth = 32;
  bool negative_control = false;
  std::shared_ptr<const ReductionWitness> reduction;
  std::shared_ptr<const NonDetWitness> nondet;
  Solver g;  // realizer for reductions
  Suite suite;
  std::function<CheckReport(std::span<const std::uint64_t> seeds, std::size_t depth)> custom;
};

const LibraryEntry* find_witness(std::string_view name);
std::vector<std::string> witness_names();
CheckReport run_witness(const LibraryEntry& e, const CheckOptions& opts = {});

}  // namespace baire
