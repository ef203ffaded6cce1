#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "baire/stream.hpp"

namespace baire {

// Name codec symbols. 0, 1 and 2 are dummies; k >= kOffset encodes k - kOffset.
namespace codec {
inline constexpr Nat kBegin = 3;
inline constexpr Nat kSeparator = 4;
inline constexpr Nat kEnd = 5;
inline constexpr Nat kOffset = 6;
inline constexpr bool is_dummy(Nat s) { return s < kBegin; }
}  // namespace codec

struct GraphEntry {
  Word input;
  Word output;
  friend bool operator==(const GraphEntry&, const GraphEntry&) = default;
};

// A monotone word function. approximate() must be monotone in the input and
// in the fuel it is given.
class WordMachine : public std::enable_shared_from_this<WordMachine> {
 public:
  virtual ~WordMachine() = default;

  virtual Word approximate(std::span<const Nat> input, Fuel& fuel) const = 0;

  // n-th entry of the graph enumeration, or nullopt if `fuel` cannot pay
  // for it. The default dovetails over inputs and stage budgets.
  virtual std::optional<GraphEntry> graph_entry(std::size_t n, Fuel& fuel) const;
  // Number of entries when the graph is finite; the name continues with 0̂.
  virtual std::optional<std::size_t> graph_size() const { return std::nullopt; }

  // The induced function on streams. The default grows the input prefix and
  // the fuel stage by stage.
  virtual Stream apply(const Stream& input) const;
};

using Machine = std::shared_ptr<const WordMachine>;
using Name = Stream;

// Dovetailing: stage s covers all words of length <= s over symbols < s + 3,
// each approximated with stage_fuel(s).
struct DovetailSlot {
  std::size_t stage;
  Word input;
};
DovetailSlot dovetail_slot(std::size_t n);
std::uint64_t stage_fuel(std::size_t stage);

class EntryDecoder {
 public:
  // Feeds one name symbol. Returns the entry it completes if accepted.
  std::optional<GraphEntry> push(Nat symbol);
  // The entry `symbol` would complete, ignoring the consistency filter.
  std::optional<GraphEntry> completes(Nat symbol) const;
  bool admissible(const GraphEntry& e) const;

  const std::vector<GraphEntry>& accepted() const noexcept { return accepted_; }
  // Supremum of outputs of accepted entries whose input is a prefix of `input`.
  Word evaluate(std::span<const Nat> input) const;

 private:
  enum class Mode : std::uint8_t { outside, input, output };
  Mode mode_ = Mode::outside;
  Word in_;
  Word out_;
  std::vector<GraphEntry> accepted_;
  std::map<Word, Word> longest_;
};

Word encode_entry(const GraphEntry& e);
Name encode_machine(Machine m);
std::vector<GraphEntry> decode_entries(std::span<const Nat> name_prefix);
Word eval_name(std::span<const Nat> name_prefix, std::span<const Nat> input_prefix);

// U_q(p). Uses the name's attached semantics when present.
Stream eval_stream(const Name& name, const Stream& input);
// U_q(p) computed by decoding the raw name, ignoring attached semantics.
Stream eval_decoded(const Name& name, const Stream& input);
// U applied to a paired stream ⟨q,p⟩.
Stream universal(const Stream& r);

Machine universal_machine();
Name universal_name();
Name compose_names(const Name& q1, const Name& q2);

// Machine library.
Machine identity_machine();
Machine table_machine(std::vector<GraphEntry> entries);
Machine map_machine(std::function<Nat(Nat)> fn);
Machine prepend_machine(Nat head);
Machine functional_machine(StreamFn fn);
// Ignores its input and outputs `out`; graph entries (ε, out[..k]).
Machine constant_machine(Stream out);
// Output depends only on the first input symbol b < branches; graph entries
// ([b], out_b[..k]). Outputs are built on first use.
Machine branch_machine(std::size_t branches, std::function<Stream(Nat)> make);
// Pure host machines drawn from a few seeded families.
Machine seeded_machine(std::uint64_t seed);

Name constant_name(const Stream& out);
// A name whose first symbol is `head`; the decoder ignores a leading junk symbol.
Name with_head(Nat head, const Name& name);

// Machine text format: one entry `w -> v` per line, words as space-separated
// naturals, `eps` for the empty word. Blank lines and `#` comments are skipped.
struct ParseError : std::runtime_error {
  ParseError(std::size_t line, const std::string& what);
  std::size_t line;
};
std::vector<GraphEntry> parse_machine_text(std::string_view text);
std::string format_machine_text(std::span<const GraphEntry> entries);

// Reads as many symbols as `fuel` allows.
Word read_available(const Stream& s, Fuel& fuel, std::size_t limit = SIZE_MAX);

}  // namespace baire
