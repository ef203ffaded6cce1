#include "baire/stream.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace baire {

namespace {

// Deep chains of lazily composed streams recurse through at(); past this
// depth a query is treated as out of fuel instead of overflowing the stack.
constexpr int kMaxDepth = 3000;
thread_local int tl_depth = 0;

struct DepthScope {
  DepthScope() noexcept { ++tl_depth; }
  ~DepthScope() { --tl_depth; }
  DepthScope(const DepthScope&) = delete;
  DepthScope& operator=(const DepthScope&) = delete;
};

constexpr Index kDense = 4096;

}  // namespace

bool Fuel::spend(std::uint64_t steps) noexcept {
  if (exhausted_ || steps > budget_ - used_) {
    exhaust();
    return false;
  }
  used_ += steps;
  return true;
}

std::optional<Source::Memo> Source::recall(Index n) const {
  std::lock_guard lock(memo_mu_);
  if (n < kDense) {
    if (n < known_.size() && known_[n]) return dense_[n];
    return std::nullopt;
  }
  auto it = sparse_.find(n);
  if (it == sparse_.end()) return std::nullopt;
  return it->second;
}

void Source::remember(Index n, Memo memo) const {
  std::lock_guard lock(memo_mu_);
  if (n < kDense) {
    if (n >= known_.size()) {
      known_.resize(n + 1, false);
      dense_.resize(n + 1);
    }
    if (!known_[n]) {
      known_[n] = true;
      dense_[n] = memo;
    }
    return;
  }
  sparse_.emplace(n, memo);
}

Stream::Stream() : Stream(zeros()) {}

Stream::Stream(std::shared_ptr<const Source> source) noexcept : source_(std::move(source)) {}

Sym Stream::at(Index n, Fuel& fuel) const {
  if (auto memo = source_->recall(n)) {
    if (!fuel.spend(memo->cost)) return Miss::fuel;
    return memo->input_miss ? Sym(Miss::input) : Sym(memo->value);
  }
  if (fuel.exhausted()) return Miss::fuel;
  if (tl_depth >= kMaxDepth) {
    fuel.exhaust();
    return Miss::fuel;
  }
  DepthScope scope;
  const std::uint64_t before = fuel.used();
  if (!fuel.spend(1)) return Miss::fuel;
  const Sym s = source_->compute(n, fuel);
  if (s.ok() || s.miss() == Miss::input) {
    source_->remember(n, {*s, fuel.used() - before, !s.ok()});
  }
  return s;
}

std::optional<Nat> Stream::at(Index n, std::uint64_t budget) const {
  Fuel fuel(budget);
  const Sym s = at(n, fuel);
  if (!s) return std::nullopt;
  return *s;
}

Word Stream::prefix(std::size_t length, Fuel& fuel) const {
  Word out;
  out.reserve(length);
  for (std::size_t i = 0; i < length; ++i) {
    const Sym s = at(i, fuel);
    if (!s) break;
    out.push_back(*s);
  }
  return out;
}

Word Stream::prefix(std::size_t length, std::uint64_t budget) const {
  Fuel fuel(budget);
  return prefix(length, fuel);
}

const StreamFn* Stream::semantics() const noexcept { return source_->semantics(); }

Sym StagedSource::compute(Index n, Fuel& fuel) const {
  std::lock_guard lock(mu_);
  const std::uint64_t available = fuel.remaining();
  while (out_.size() <= n && !finished_) {
    if (advancing_) {
      // Circular demand on a symbol this source is still producing.
      fuel.exhaust();
      return Miss::fuel;
    }
    const std::size_t k = stages_;
    const std::uint64_t prior = k == 0 ? 0 : max_cost_[k - 1];
    if (k + 1 + prior > available) {
      fuel.exhaust();
      return Miss::fuel;
    }
    Fuel cap(available - (k + 1));
    const std::size_t before = out_.size();
    advancing_ = true;
    Step step;
    try {
      step = advance(k, cap);
    } catch (...) {
      advancing_ = false;
      out_.resize(before);
      throw;
    }
    advancing_ = false;
    if (step == Step::starved) {
      out_.resize(before);
      fuel.exhaust();
      return Miss::fuel;
    }
    stage_of_.resize(out_.size(), k);
    max_cost_.push_back(std::max(prior, cap.used()));
    ++stages_;
    if (step == Step::finished) finished_ = true;
  }
  if (n >= out_.size()) {
    const std::uint64_t charge = stages_ + (stages_ == 0 ? 0 : max_cost_.back());
    if (!fuel.spend(charge)) return Miss::fuel;
    return Miss::input;
  }
  const std::size_t k = stage_of_[n];
  if (!fuel.spend(k + 1 + max_cost_[k])) return Miss::fuel;
  return out_[n];
}

void StagedSource::emit(Nat symbol) const { out_.push_back(symbol); }

namespace {

class RuleSource final : public Source {
 public:
  explicit RuleSource(std::function<Nat(Index)> rule) : rule_(std::move(rule)) {}
  Sym compute(Index n, Fuel&) const override { return rule_(n); }

 private:
  std::function<Nat(Index)> rule_;
};

class LazySource final : public Source {
 public:
  explicit LazySource(std::function<Sym(Index, Fuel&)> rule) : rule_(std::move(rule)) {}
  Sym compute(Index n, Fuel& fuel) const override { return rule_(n, fuel); }

 private:
  std::function<Sym(Index, Fuel&)> rule_;
};

class FiniteSource final : public Source {
 public:
  explicit FiniteSource(Word word) : word_(std::move(word)) {}
  Sym compute(Index n, Fuel&) const override {
    if (n < word_.size()) return word_[n];
    return Miss::input;
  }

 private:
  Word word_;
};

class NeverSource final : public Source {
 public:
  Sym compute(Index, Fuel& fuel) const override {
    fuel.exhaust();
    return Miss::fuel;
  }
};

class IndexMapSource final : public Source {
 public:
  IndexMapSource(Stream base, std::function<Index(Index)> map)
      : base_(std::move(base)), map_(std::move(map)) {}
  Sym compute(Index n, Fuel& fuel) const override { return base_.at(map_(n), fuel); }

 private:
  Stream base_;
  std::function<Index(Index)> map_;
};

class ConsSource final : public Source {
 public:
  ConsSource(Nat head, Stream tail) : head_(head), tail_(std::move(tail)) {}
  Sym compute(Index n, Fuel& fuel) const override {
    if (n == 0) return head_;
    return tail_.at(n - 1, fuel);
  }
  const Stream& tail() const noexcept { return tail_; }

 private:
  Nat head_;
  Stream tail_;
};

class MapSource final : public Source {
 public:
  MapSource(Stream base, std::function<Nat(Nat)> fn) : base_(std::move(base)), fn_(std::move(fn)) {}
  Sym compute(Index n, Fuel& fuel) const override {
    const Sym s = base_.at(n, fuel);
    if (!s) return s;
    return fn_(*s);
  }

 private:
  Stream base_;
  std::function<Nat(Nat)> fn_;
};

class AliasSource final : public Source {
 public:
  explicit AliasSource(Stream base) : base_(std::move(base)) {}
  Sym compute(Index n, Fuel& fuel) const override { return base_.at(n, fuel); }
  const std::pair<Stream, Stream>* pair_parts() const noexcept override {
    return base_.source().pair_parts();
  }
  std::optional<Stream> component(Index i) const override { return base_.source().component(i); }

 private:
  Stream base_;
};

class DeferredSource final : public Source {
 public:
  explicit DeferredSource(std::function<std::optional<Stream>(Fuel&)> build)
      : build_(std::move(build)) {}

  Sym compute(Index n, Fuel& fuel) const override {
    std::optional<Stream> target;
    std::uint64_t cost = 0;
    {
      std::lock_guard lock(mu_);
      if (!target_ && !input_miss_) {
        Fuel cap(fuel.remaining());
        auto built = build_(cap);
        if (!built) {
          if (cap.exhausted()) {
            fuel.exhaust();
            return Miss::fuel;
          }
          input_miss_ = true;
        } else {
          target_ = std::move(built);
        }
        cost_ = cap.used();
      }
      target = target_;
      cost = cost_;
    }
    if (!fuel.spend(cost)) return Miss::fuel;
    if (!target) return Miss::input;
    return target->at(n, fuel);
  }

 private:
  std::function<std::optional<Stream>(Fuel&)> build_;
  mutable std::recursive_mutex mu_;
  mutable std::optional<Stream> target_;
  mutable std::uint64_t cost_ = 0;
  mutable bool input_miss_ = false;
};

class PairSource final : public Source {
 public:
  PairSource(Stream q, Stream p) : parts_(std::move(q), std::move(p)) {}
  Sym compute(Index n, Fuel& fuel) const override {
    return (n % 2 == 0 ? parts_.first : parts_.second).at(n / 2, fuel);
  }
  const std::pair<Stream, Stream>* pair_parts() const noexcept override { return &parts_; }

 private:
  std::pair<Stream, Stream> parts_;
};

class TupleSource final : public Source {
 public:
  explicit TupleSource(std::function<Stream(Index)> make) : make_(std::move(make)) {}

  Sym compute(Index n, Fuel& fuel) const override {
    const auto [i, m] = cantor_unpair(n);
    return get(i).at(m, fuel);
  }
  std::optional<Stream> component(Index i) const override { return get(i); }

 private:
  Stream get(Index i) const {
    {
      std::lock_guard lock(mu_);
      auto it = cache_.find(i);
      if (it != cache_.end()) return it->second;
    }
    Stream made = make_(i);
    std::lock_guard lock(mu_);
    return cache_.emplace(i, std::move(made)).first->second;
  }

  std::function<Stream(Index)> make_;
  mutable std::mutex mu_;
  mutable std::unordered_map<Index, Stream> cache_;
};

Stream make(std::shared_ptr<const Source> s) { return Stream(std::move(s)); }

}  // namespace

Stream zeros() {
  static const Stream z = make(std::make_shared<RuleSource>([](Index) -> Nat { return 0; }));
  return z;
}

Stream constant(Nat value) {
  if (value == 0) return zeros();
  return make(std::make_shared<RuleSource>([value](Index) { return value; }));
}

Stream from_prefix(Word prefix, Word cycle) {
  if (cycle.empty()) throw std::invalid_argument("from_prefix: empty cycle");
  return make(std::make_shared<RuleSource>([prefix = std::move(prefix), cycle = std::move(cycle)](Index n) {
    if (n < prefix.size()) return prefix[n];
    return cycle[(n - prefix.size()) % cycle.size()];
  }));
}

Stream finite(Word word) { return make(std::make_shared<FiniteSource>(std::move(word))); }

Stream tabulate(std::function<Nat(Index)> rule) {
  return make(std::make_shared<RuleSource>(std::move(rule)));
}

Stream lazy(std::function<Sym(Index, Fuel&)> rule) {
  return make(std::make_shared<LazySource>(std::move(rule)));
}

Stream never() {
  static const Stream n = make(std::make_shared<NeverSource>());
  return n;
}

Stream seeded(std::uint64_t seed, Nat bound) {
  return tabulate([seed, bound](Index n) {
    const std::uint64_t h = mix_seed(seed, n);
    return bound == 0 ? h : h % bound;
  });
}

Stream drop(const Stream& s, Index k) {
  if (k == 0) return s;
  if (const auto* c = dynamic_cast<const ConsSource*>(&s.source())) return drop(c->tail(), k - 1);
  return make(std::make_shared<IndexMapSource>(s, [k](Index n) { return n + k; }));
}

Stream cons(Nat head, const Stream& tail) { return make(std::make_shared<ConsSource>(head, tail)); }

Stream map_symbols(const Stream& s, std::function<Nat(Nat)> fn) {
  return make(std::make_shared<MapSource>(s, std::move(fn)));
}

Stream defer(std::function<std::optional<Stream>(Fuel&)> build) {
  return make(std::make_shared<DeferredSource>(std::move(build)));
}

Stream with_semantics(const Stream& s, StreamFn fn) {
  auto alias = std::make_shared<AliasSource>(s);
  alias->bind_semantics(std::move(fn));
  return make(std::move(alias));
}

Stream resolve(const std::function<std::optional<Stream>(Fuel&)>& build, std::uint64_t budget) {
  Fuel fuel(budget);
  if (auto built = build(fuel)) return *built;
  return defer(build);
}

Stream bounded(const std::function<Stream()>& build) {
  thread_local int nesting = 0;
  if (nesting >= 64) {
    return defer([build](Fuel&) -> std::optional<Stream> { return bounded(build); });
  }
  ++nesting;
  struct Exit {
    ~Exit() { --nesting; }
  } exit;
  return build();
}

Stream pair_stream(const Stream& q, const Stream& p) { return make(std::make_shared<PairSource>(q, p)); }

std::pair<Stream, Stream> unpair_stream(const Stream& r) {
  if (const auto* parts = r.source().pair_parts()) return *parts;
  return {make(std::make_shared<IndexMapSource>(r, [](Index n) { return 2 * n; })),
          make(std::make_shared<IndexMapSource>(r, [](Index n) { return 2 * n + 1; }))};
}

Stream first(const Stream& r) { return unpair_stream(r).first; }
Stream second(const Stream& r) { return unpair_stream(r).second; }

Stream tuple_countable(std::function<Stream(Index)> components) {
  return make(std::make_shared<TupleSource>(std::move(components)));
}

Stream project(const Stream& t, Index i) {
  if (auto c = t.source().component(i)) return *c;
  return make(std::make_shared<IndexMapSource>(t, [i](Index n) { return cantor_pair(i, n); }));
}

Index cantor_pair(Index i, Index n) {
  using Wide = unsigned __int128;
  const Wide s = Wide(i) + n;
  if (s > (Wide(1) << 33)) throw std::overflow_error("cantor_pair: index overflow");
  const Wide v = s * (s + 1) / 2 + n;
  if (v > Wide(UINT64_MAX)) throw std::overflow_error("cantor_pair: index overflow");
  return static_cast<Index>(v);
}

std::pair<Index, Index> cantor_unpair(Index k) {
  using Wide = unsigned __int128;
  auto tri = [](Wide w) { return w * (w + 1) / 2; };
  Wide w = static_cast<Wide>((std::sqrt(8.0L * static_cast<long double>(k) + 1.0L) - 1.0L) / 2.0L);
  while (tri(w) > k) --w;
  while (tri(w + 1) <= k) ++w;
  const Index n = static_cast<Index>(k - tri(w));
  const Index i = static_cast<Index>(w) - n;
  return {i, n};
}

bool is_prefix(std::span<const Nat> a, std::span<const Nat> b) {
  return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

bool comparable(std::span<const Nat> a, std::span<const Nat> b) {
  return is_prefix(a, b) || is_prefix(b, a);
}

std::optional<Word> word_sup(std::span<const Nat> a, std::span<const Nat> b) {
  if (is_prefix(a, b)) return Word(b.begin(), b.end());
  if (is_prefix(b, a)) return Word(a.begin(), a.end());
  return std::nullopt;
}

Word interleave(std::span<const Nat> q, std::span<const Nat> p) {
  const std::size_t k = std::min(q.size(), p.size());
  Word out;
  out.reserve(2 * k + 1);
  for (std::size_t i = 0; i < k; ++i) {
    out.push_back(q[i]);
    out.push_back(p[i]);
  }
  if (q.size() > k) out.push_back(q[k]);
  return out;
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a * 0x9e3779b97f4a7c15ULL + b + 0x632be59bd9b4e019ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace baire
