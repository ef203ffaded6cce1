#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <unordered_map>

#include "baire/machine.hpp"

namespace baire {

enum class Verdict : std::uint8_t { consistent, undetermined, refuted };
std::string_view to_string(Verdict v);
// refuted dominates undetermined, which dominates consistent.
Verdict worst(Verdict a, Verdict b);

// Coordinate `coordinate` of a limit instance holds `value` from `stage` on.
struct Commit {
  Index coordinate = 0;
  Nat value = 0;
  Index stage = 0;
  friend bool operator==(const Commit&, const Commit&) = default;
};

// Generator secrets. Only oracle realizers and generators read these.
struct Witness {
  std::optional<Index> first_nonzero;  // lpo: nullopt means all zero
  Nat value = 0;                       // c2, cn: the designated choice; limN: the limit
  Word prefix;                         // wkl: the path; lim: the limit
  Word cycle{0};
  friend bool operator==(const Witness&, const Witness&) = default;
};

struct Instance {
  std::string problem;
  std::uint64_t seed = 0;
  // Finite public description. The public stream is `prefix` then `cycle`
  // repeated, except for lim where it is built from the commit table.
  Word prefix;
  Word cycle{0};
  std::vector<Commit> commits;
  Index default_stage = 0;
  Witness witness;
  Stream public_name;

  // lim/limN: stage from which coordinate k is committed.
  Index stage_of(Index k) const;
};

struct Problem {
  std::string name;
  // Number of answer classes a loop program distinguishes by the answer's
  // first symbol; 0 for problems with stream answers.
  std::size_t branches = 0;
  std::function<Instance(std::uint64_t seed)> generate;
  // Builds public_name from the public description.
  std::function<Stream(const Instance&)> build;
  // Witness-blind. `output` is the determined prefix of a candidate answer.
  std::function<Verdict(const Instance&, std::span<const Nat> output, std::size_t depth)> check;
  // Oracle realizer; may read the witness.
  std::function<Stream(const Instance&)> solve;
};

// Registered problems: id, lpo, c2 (alias llpo), c2-unique, cn, lim, limN,
// wkl (alias c-cantor). Returns nullptr for unknown names.
const Problem* find_problem(std::string_view name);
const Problem& problem(std::string_view name);
std::vector<std::string> problem_names();

// Discrete answers: the value, then 0̂.
Stream encode_value(Nat v);
// Binary word w ↦ value of the numeral 1w, minus 1.
Nat cylinder_code(std::span<const Nat> bits);
Word cylinder_word(Nat code);

// Index of the first nonzero symbol within `depth`, nullopt when the prefix
// is all zero, or nullopt for `determined` when the budget runs out first.
struct SierpinskiValue {
  bool determined = true;
  std::optional<Index> nonzero_at;
};
SierpinskiValue sierpinski_value(const Stream& p, std::size_t depth, std::uint64_t budget = 1'000'000);

// Maps public streams back to their instances, so oracle realizers can answer
// name-level queries. Lookup is by stream identity.
class InstanceRegistry {
 public:
  static InstanceRegistry& global();
  std::shared_ptr<const Instance> add(Instance inst);
  std::shared_ptr<const Instance> find(const Stream& s) const;

 private:
  mutable std::mutex mu_;
  std::unordered_map<const void*, std::shared_ptr<const Instance>> by_identity_;
};

// Generates, builds and registers.
std::shared_ptr<const Instance> make_instance(const Problem& p, std::uint64_t seed);
std::shared_ptr<const Instance> register_instance(Instance inst);
Verdict check_stream(const Instance& inst, const Stream& output, std::size_t depth, std::uint64_t budget);

// Name-level oracle realizer: looks the input up in the registry.
StreamFn oracle_solver(const Problem& p);

// Instance file format:
//   problem <name> seed <n>
//   public: <prefix naturals> cycle <cycle naturals>
//   default-stage <s>          (optional)
//   commit <k> <v> <s>         (any number)
//   witness: none | all-zero | first-nonzero <k> | value <v> | path <w> cycle <c>
std::string format_instance(const Instance& inst);
Instance parse_instance(std::string_view text);

// A loop whose program family branches on the first symbol of each answer.
// State i for answer history h is ⟨program(h), data(h)⟩; the program head is
// the number of remaining steps (1 forever for endless loops, 0 at the end).
class Loop : public std::enable_shared_from_this<Loop> {
 public:
  // Data for a history of length `level`; must return a built instance.
  using DataGen = std::function<Instance(std::uint64_t seed, std::size_t level, bool on_true_path)>;
  static constexpr std::size_t kEndless = SIZE_MAX;

  static std::shared_ptr<const Loop> make(const Problem& step, std::uint64_t seed, std::size_t length = kEndless,
                                          DataGen gen = nullptr);

  const Problem& step() const noexcept { return *step_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::size_t length() const noexcept { return length_; }
  std::size_t branches() const noexcept { return step_->branches; }
  Nat head(std::size_t i) const;

  Stream initial() const { return state({}); }
  Stream state(const Word& history) const;
  Name program(const Word& history) const;
  std::shared_ptr<const Instance> data(const Word& history) const;
  // The answer history that follows every witness.
  Word true_history(std::size_t steps) const;
  Nat branch_of(Nat answer) const { return std::min<Nat>(answer, branches() - 1); }

 private:
  Loop(const Problem& step, std::uint64_t seed, std::size_t length, DataGen gen);
  bool on_true_path(const Word& history) const;

  const Problem* step_;
  std::uint64_t seed_;
  std::size_t length_;
  DataGen gen_;
  mutable std::recursive_mutex mu_;
  mutable std::map<Word, std::shared_ptr<const Instance>> data_;
  mutable std::map<Word, Name> programs_;
  mutable std::map<Word, Stream> states_;
};

// Step-wise run validation: observed(i) is the determined prefix of state i.
// Each step must be explained by some answer the step checker accepts.
struct RunCheck {
  Verdict verdict = Verdict::consistent;
  std::size_t steps = 0;  // steps validated
  std::size_t at = 0;     // failing or undetermined step
  Word history;
};
RunCheck check_run(const Loop& loop, const std::function<Word(std::size_t)>& observed, std::size_t steps,
                   std::size_t depth);

}  // namespace baire
