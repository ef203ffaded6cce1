#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

namespace baire {

using Nat = std::uint64_t;
using Index = std::uint64_t;
using Word = std::vector<Nat>;

// Why a symbol could not be produced. `fuel` means "not yet": a larger budget
// may succeed. `input` means the query ran past the end of a finite word.
enum class Miss : std::uint8_t { fuel, input };

class Sym {
 public:
  constexpr Sym(Nat value) noexcept : value_(value), miss_(Miss::fuel), ok_(true) {}
  constexpr Sym(Miss miss) noexcept : value_(0), miss_(miss), ok_(false) {}

  constexpr bool ok() const noexcept { return ok_; }
  constexpr explicit operator bool() const noexcept { return ok_; }
  constexpr Nat operator*() const noexcept { return value_; }
  constexpr Miss miss() const noexcept { return miss_; }

 private:
  Nat value_;
  Miss miss_;
  bool ok_;
};

// Step budget for one query. Once exhausted it stays exhausted.
class Fuel {
 public:
  static constexpr std::uint64_t unlimited = UINT64_MAX;

  explicit Fuel(std::uint64_t budget) noexcept : budget_(budget) {}

  bool spend(std::uint64_t steps) noexcept;
  void exhaust() noexcept {
    used_ = budget_;
    exhausted_ = true;
  }

  std::uint64_t budget() const noexcept { return budget_; }
  std::uint64_t used() const noexcept { return used_; }
  std::uint64_t remaining() const noexcept { return budget_ - used_; }
  bool exhausted() const noexcept { return exhausted_; }

 private:
  std::uint64_t budget_;
  std::uint64_t used_ = 0;
  bool exhausted_ = false;
};

class Stream;
class Source;

// A continuous function on Baire space at the host level.
using StreamFn = std::function<Stream(const Stream&)>;

// Immutable handle to a lazily computed, memoized sequence of naturals.
//
// Every symbol has a recorded cost. A query is answered iff the remaining
// budget covers that cost, and memo hits charge it again, so answers never
// depend on evaluation history.
class Stream {
 public:
  Stream();  // 0̂
  explicit Stream(std::shared_ptr<const Source> source) noexcept;

  Sym at(Index n, Fuel& fuel) const;
  std::optional<Nat> at(Index n, std::uint64_t budget) const;

  // Reads symbols 0..length-1, stopping early at the first miss.
  Word prefix(std::size_t length, Fuel& fuel) const;
  Word prefix(std::size_t length, std::uint64_t budget) const;

  // The function this stream denotes as a Name, when its construction
  // guarantees one. Evaluation may use it instead of decoding.
  const StreamFn* semantics() const noexcept;

  const Source& source() const noexcept { return *source_; }
  const std::shared_ptr<const Source>& source_ptr() const noexcept { return source_; }
  const void* identity() const noexcept { return source_.get(); }

 private:
  std::shared_ptr<const Source> source_;
};

class Source {
 public:
  virtual ~Source() = default;

  // Produces symbol n. Returns Miss::fuel only after `fuel` is exhausted.
  virtual Sym compute(Index n, Fuel& fuel) const = 0;

  // Structural views used to keep semantics attached through plumbing.
  virtual const std::pair<Stream, Stream>* pair_parts() const noexcept { return nullptr; }
  virtual std::optional<Stream> component(Index) const { return std::nullopt; }

  const StreamFn* semantics() const noexcept { return semantics_.get(); }
  // Construction-time only: must be called before the source is shared.
  void bind_semantics(StreamFn fn) { semantics_ = std::make_shared<const StreamFn>(std::move(fn)); }

 private:
  friend class Stream;
  struct Memo {
    Nat value;
    std::uint64_t cost;
    bool input_miss;
  };
  std::optional<Memo> recall(Index n) const;
  void remember(Index n, Memo memo) const;

  mutable std::mutex memo_mu_;
  mutable std::vector<Memo> dense_;
  mutable std::vector<bool> known_;
  mutable std::unordered_map<Index, Memo> sparse_;
  std::shared_ptr<const StreamFn> semantics_;
};

// Sources that advance in stages, each stage appending determined symbols.
// A symbol emitted in stage k is charged (k + 1) + the largest stage cost up
// to k, which keeps costs deterministic while bounding the number of stages.
class StagedSource : public Source {
 public:
  Sym compute(Index n, Fuel& fuel) const final;

 protected:
  enum class Step : std::uint8_t { advanced, finished, starved };

  // Runs stage `stage`. Must not change state when returning `starved`.
  virtual Step advance(std::size_t stage, Fuel& fuel) const = 0;
  void emit(Nat symbol) const;
  const std::vector<Nat>& produced() const noexcept { return out_; }

 private:
  mutable std::recursive_mutex mu_;
  mutable std::vector<Nat> out_;
  mutable std::vector<std::size_t> stage_of_;
  mutable std::vector<std::uint64_t> max_cost_;
  mutable std::size_t stages_ = 0;
  mutable bool finished_ = false;
  mutable bool advancing_ = false;
};

// Constructors.
Stream zeros();
Stream constant(Nat value);
Stream from_prefix(Word prefix, Word cycle = {0});
Stream finite(Word word);
Stream tabulate(std::function<Nat(Index)> rule);
Stream lazy(std::function<Sym(Index, Fuel&)> rule);
Stream never();
Stream seeded(std::uint64_t seed, Nat bound);
Stream drop(const Stream& s, Index k);
Stream cons(Nat head, const Stream& tail);
Stream map_symbols(const Stream& s, std::function<Nat(Nat)> fn);
// Deferred construction: `build` may read other streams under fuel and is
// retried until it succeeds. Its cost is charged on every query.
Stream defer(std::function<std::optional<Stream>(Fuel&)> build);
Stream with_semantics(const Stream& s, StreamFn fn);
// Runs `build` at once under `budget` when that suffices, else defers it.
Stream resolve(const std::function<std::optional<Stream>(Fuel&)>& build, std::uint64_t budget = 1 << 16);
// Runs `build` at once unless too many such constructions are already
// nested, in which case it is deferred to the first query.
Stream bounded(const std::function<Stream()>& build);

// Pairing and countable tupling.
Stream pair_stream(const Stream& q, const Stream& p);
std::pair<Stream, Stream> unpair_stream(const Stream& r);
Stream first(const Stream& r);
Stream second(const Stream& r);
Stream tuple_countable(std::function<Stream(Index)> components);
Stream project(const Stream& t, Index i);

Index cantor_pair(Index i, Index n);
std::pair<Index, Index> cantor_unpair(Index k);

// Words.
bool is_prefix(std::span<const Nat> a, std::span<const Nat> b);
bool comparable(std::span<const Nat> a, std::span<const Nat> b);
std::optional<Word> word_sup(std::span<const Nat> a, std::span<const Nat> b);
Word interleave(std::span<const Nat> q, std::span<const Nat> p);

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

}  // namespace baire
