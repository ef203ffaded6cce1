#include "baire/machine.hpp"

#include <algorithm>
#include <charconv>
#include <iterator>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace baire {

namespace {

// Stage t reads the input up to induced_length(t) and approximates with a
// matching budget. Lengths grow geometrically after the first few stages so
// long outputs do not cost quadratic host time.
std::size_t induced_length(std::size_t stage) {
  std::size_t len = 0;
  for (std::size_t t = 0; t <= stage; ++t) len = len < 16 ? len + 1 : len + len / 4;
  return len;
}

class InducedSource final : public StagedSource {
 public:
  InducedSource(Machine m, Stream input) : m_(std::move(m)), input_(std::move(input)) {}

 protected:
  Step advance(std::size_t stage, Fuel& fuel) const override {
    const std::size_t target = induced_length(stage);
    const std::size_t old = prefix_.size();
    bool done = input_done_;
    while (!done && prefix_.size() < target) {
      const Sym s = input_.at(prefix_.size(), fuel);
      if (s) {
        prefix_.push_back(*s);
      } else if (s.miss() == Miss::input) {
        done = true;
      } else {
        prefix_.resize(old);
        return Step::starved;
      }
    }
    const std::uint64_t budget = stage_fuel(target);
    Fuel inner(budget);
    const Word out = m_->approximate(prefix_, inner);
    if (!fuel.spend(inner.used())) {
      prefix_.resize(old);
      return Step::starved;
    }
    input_done_ = done;
    const auto& have = produced();
    if (out.size() > have.size() && is_prefix(have, out)) {
      for (std::size_t i = have.size(); i < out.size(); ++i) emit(out[i]);
    }
    return Step::advanced;
  }

 private:
  Machine m_;
  Stream input_;
  mutable Word prefix_;
  mutable bool input_done_ = false;
};

class EncodedSource final : public StagedSource {
 public:
  explicit EncodedSource(Machine m) : m_(std::move(m)) {}

 protected:
  Step advance(std::size_t stage, Fuel& fuel) const override {
    if (auto size = m_->graph_size(); size && stage >= *size) {
      emit(0);
      return Step::advanced;
    }
    auto entry = m_->graph_entry(stage, fuel);
    if (!entry) return Step::starved;
    for (Nat s : encode_entry(*entry)) emit(s);
    return Step::advanced;
  }

 private:
  Machine m_;
};

class DecodeSource final : public StagedSource {
 public:
  DecodeSource(Name name, Stream input) : name_(std::move(name)), input_(std::move(input)) {}

 protected:
  Step advance(std::size_t stage, Fuel& fuel) const override {
    const Sym s = name_.at(stage, fuel);
    if (!s) return s.miss() == Miss::input ? Step::finished : Step::starved;
    const auto pending = decoder_.completes(*s);
    bool applies = false;
    if (pending && decoder_.admissible(*pending)) {
      applies = true;
      const Word& w = pending->input;
      for (std::size_t i = 0; i < w.size(); ++i) {
        const Sym x = input_.at(i, fuel);
        if (!x && x.miss() == Miss::fuel) return Step::starved;
        if (!x || *x != w[i]) {
          applies = false;
          break;
        }
      }
    }
    const auto accepted = decoder_.push(*s);
    if (accepted && applies) {
      const auto& have = produced();
      const Word& v = accepted->output;
      for (std::size_t i = have.size(); i < v.size(); ++i) emit(v[i]);
    }
    return Step::advanced;
  }

 private:
  Name name_;
  Stream input_;
  mutable EntryDecoder decoder_;
};

}  // namespace

// ----- dovetailing -----

std::uint64_t stage_fuel(std::size_t stage) {
  const std::uint64_t s = stage + 1;
  return s * s;
}

DovetailSlot dovetail_slot(std::size_t n) {
  std::size_t stage = 0;
  for (;;) {
    const std::size_t alphabet = stage + 3;
    std::size_t count = 1;
    for (std::size_t len = 0; len <= stage; ++len) {
      if (n < count) {
        Word w(len);
        std::size_t m = n;
        for (std::size_t i = len; i-- > 0;) {
          w[i] = m % alphabet;
          m /= alphabet;
        }
        return {stage, std::move(w)};
      }
      n -= count;
      count *= alphabet;
    }
    ++stage;
  }
}

std::optional<GraphEntry> WordMachine::graph_entry(std::size_t n, Fuel& fuel) const {
  DovetailSlot slot = dovetail_slot(n);
  Fuel inner(stage_fuel(slot.stage));
  Word out = approximate(slot.input, inner);
  if (!fuel.spend(inner.used())) return std::nullopt;
  return GraphEntry{std::move(slot.input), std::move(out)};
}

Stream WordMachine::apply(const Stream& input) const {
  return Stream(std::make_shared<InducedSource>(shared_from_this(), input));
}

// ----- codec -----

Word encode_entry(const GraphEntry& e) {
  Word out;
  out.reserve(e.input.size() + e.output.size() + 3);
  out.push_back(codec::kBegin);
  for (Nat x : e.input) out.push_back(x + codec::kOffset);
  out.push_back(codec::kSeparator);
  for (Nat x : e.output) out.push_back(x + codec::kOffset);
  out.push_back(codec::kEnd);
  return out;
}

std::optional<GraphEntry> EntryDecoder::completes(Nat symbol) const {
  if (mode_ == Mode::output && symbol == codec::kEnd) return GraphEntry{in_, out_};
  return std::nullopt;
}

bool EntryDecoder::admissible(const GraphEntry& e) const {
  const Word& u = e.input;
  for (std::size_t k = 0; k <= u.size(); ++k) {
    auto it = longest_.find(Word(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(k)));
    if (it != longest_.end() && !comparable(it->second, e.output)) return false;
  }
  for (auto it = longest_.upper_bound(u); it != longest_.end() && is_prefix(u, it->first); ++it) {
    if (!comparable(it->second, e.output)) return false;
  }
  return true;
}

std::optional<GraphEntry> EntryDecoder::push(Nat symbol) {
  using namespace codec;
  switch (mode_) {
    case Mode::outside:
      if (symbol == kBegin) {
        mode_ = Mode::input;
        in_.clear();
        out_.clear();
      }
      return std::nullopt;
    case Mode::input:
      if (is_dummy(symbol)) return std::nullopt;
      if (symbol == kBegin) {
        in_.clear();
      } else if (symbol == kSeparator) {
        mode_ = Mode::output;
      } else if (symbol == kEnd) {
        mode_ = Mode::outside;
      } else {
        in_.push_back(symbol - kOffset);
      }
      return std::nullopt;
    case Mode::output:
      if (is_dummy(symbol)) return std::nullopt;
      if (symbol == kBegin) {
        mode_ = Mode::input;
        in_.clear();
        out_.clear();
      } else if (symbol == kSeparator) {
        mode_ = Mode::outside;
      } else if (symbol == kEnd) {
        mode_ = Mode::outside;
        GraphEntry e{std::move(in_), std::move(out_)};
        in_.clear();
        out_.clear();
        if (!admissible(e)) return std::nullopt;
        auto [it, fresh] = longest_.try_emplace(e.input, e.output);
        if (!fresh && e.output.size() > it->second.size()) it->second = e.output;
        accepted_.push_back(e);
        return e;
      } else {
        out_.push_back(symbol - kOffset);
      }
      return std::nullopt;
  }
  return std::nullopt;
}

Word EntryDecoder::evaluate(std::span<const Nat> input) const {
  Word best;
  Word key;
  key.reserve(input.size());
  for (std::size_t k = 0;; ++k) {
    auto it = longest_.find(key);
    if (it != longest_.end() && it->second.size() > best.size()) best = it->second;
    if (k == input.size()) break;
    key.push_back(input[k]);
  }
  return best;
}

std::vector<GraphEntry> decode_entries(std::span<const Nat> name_prefix) {
  EntryDecoder d;
  for (Nat s : name_prefix) d.push(s);
  return d.accepted();
}

Word eval_name(std::span<const Nat> name_prefix, std::span<const Nat> input_prefix) {
  EntryDecoder d;
  for (Nat s : name_prefix) d.push(s);
  return d.evaluate(input_prefix);
}

Name encode_machine(Machine m) {
  auto src = std::make_shared<EncodedSource>(m);
  src->bind_semantics([m](const Stream& x) { return m->apply(x); });
  return Stream(std::move(src));
}

Stream eval_stream(const Name& name, const Stream& input) {
  if (const StreamFn* fn = name.semantics()) return (*fn)(input);
  return eval_decoded(name, input);
}

Stream eval_decoded(const Name& name, const Stream& input) {
  return Stream(std::make_shared<DecodeSource>(name, input));
}

Stream universal(const Stream& r) {
  auto [q, p] = unpair_stream(r);
  return eval_stream(q, p);
}

Word read_available(const Stream& s, Fuel& fuel, std::size_t limit) {
  Word out;
  for (std::size_t i = 0; i < limit; ++i) {
    const Sym x = s.at(i, fuel);
    if (!x) break;
    out.push_back(*x);
  }
  return out;
}

// ----- machine library -----

namespace {

class UniversalMachine final : public WordMachine {
 public:
  Word approximate(std::span<const Nat> u, Fuel& fuel) const override {
    const std::size_t len = std::min<std::uint64_t>(u.size(), fuel.remaining());
    fuel.spend(len);
    Word name, input;
    for (std::size_t i = 0; i < len; ++i) (i % 2 == 0 ? name : input).push_back(u[i]);
    return eval_name(name, input);
  }
};

class IdentityMachine final : public WordMachine {
 public:
  Word approximate(std::span<const Nat> u, Fuel& fuel) const override {
    const std::size_t len = std::min<std::uint64_t>(u.size(), fuel.remaining());
    fuel.spend(len);
    return Word(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(len));
  }
  Stream apply(const Stream& x) const override { return x; }
};

class TableMachine final : public WordMachine {
 public:
  explicit TableMachine(std::vector<GraphEntry> entries) : entries_(std::move(entries)) {
    for (const auto& e : entries_) {
      for (Nat s : encode_entry(e)) decoder_.push(s);
    }
  }
  Word approximate(std::span<const Nat> u, Fuel& fuel) const override {
    if (!fuel.spend(1)) return {};
    return decoder_.evaluate(u);
  }
  std::optional<GraphEntry> graph_entry(std::size_t n, Fuel& fuel) const override {
    if (n >= entries_.size() || !fuel.spend(1)) return std::nullopt;
    return entries_[n];
  }
  std::optional<std::size_t> graph_size() const override { return entries_.size(); }

 private:
  std::vector<GraphEntry> entries_;
  EntryDecoder decoder_;
};

class MapMachine final : public WordMachine {
 public:
  explicit MapMachine(std::function<Nat(Nat)> fn) : fn_(std::move(fn)) {}
  Word approximate(std::span<const Nat> u, Fuel& fuel) const override {
    const std::size_t len = std::min<std::uint64_t>(u.size(), fuel.remaining());
    fuel.spend(len);
    Word out;
    for (std::size_t i = 0; i < len; ++i) out.push_back(fn_(u[i]));
    return out;
  }
  Stream apply(const Stream& x) const override { return map_symbols(x, fn_); }

 private:
  std::function<Nat(Nat)> fn_;
};

class PrependMachine final : public WordMachine {
 public:
  explicit PrependMachine(Nat head) : head_(head) {}
  Word approximate(std::span<const Nat> u, Fuel& fuel) const override {
    const std::size_t len = std::min<std::uint64_t>(u.size(), fuel.remaining());
    fuel.spend(len);
    Word out{head_};
    out.insert(out.end(), u.begin(), u.begin() + static_cast<std::ptrdiff_t>(len));
    return out;
  }
  Stream apply(const Stream& x) const override { return cons(head_, x); }

 private:
  Nat head_;
};

class DropMachine final : public WordMachine {
 public:
  Word approximate(std::span<const Nat> u, Fuel& fuel) const override {
    const std::size_t len = std::min<std::uint64_t>(u.size(), fuel.remaining());
    fuel.spend(len);
    if (len <= 1) return {};
    return Word(u.begin() + 1, u.begin() + static_cast<std::ptrdiff_t>(len));
  }
};

class PrefixSumMachine final : public WordMachine {
 public:
  explicit PrefixSumMachine(Nat modulus) : modulus_(modulus) {}
  Word approximate(std::span<const Nat> u, Fuel& fuel) const override {
    const std::size_t len = std::min<std::uint64_t>(u.size(), fuel.remaining());
    fuel.spend(len);
    Word out;
    Nat acc = 0;
    for (std::size_t i = 0; i < len; ++i) {
      acc = (acc + u[i]) % modulus_;
      out.push_back(acc);
    }
    return out;
  }

 private:
  Nat modulus_;
};

// Emits one symbol per pair of input symbols.
class PairSumMachine final : public WordMachine {
 public:
  Word approximate(std::span<const Nat> u, Fuel& fuel) const override {
    const std::size_t len = std::min<std::uint64_t>(u.size(), fuel.remaining());
    fuel.spend(len);
    Word out;
    for (std::size_t i = 0; i + 1 < len; i += 2) out.push_back(u[i] + u[i + 1]);
    return out;
  }
};

class FunctionalMachine final : public WordMachine {
 public:
  explicit FunctionalMachine(StreamFn fn) : fn_(std::move(fn)) {}
  Word approximate(std::span<const Nat> u, Fuel& fuel) const override {
    return read_available(fn_(finite(Word(u.begin(), u.end()))), fuel);
  }
  Stream apply(const Stream& x) const override { return fn_(x); }

 private:
  StreamFn fn_;
};

class ConstantMachine final : public WordMachine {
 public:
  explicit ConstantMachine(Stream out) : out_(std::move(out)) {}
  Word approximate(std::span<const Nat>, Fuel& fuel) const override {
    return read_available(out_, fuel);
  }
  std::optional<GraphEntry> graph_entry(std::size_t n, Fuel& fuel) const override {
    Word out;
    for (std::size_t i = 0; i <= n; ++i) {
      const Sym s = out_.at(i, fuel);
      if (!s) {
        if (s.miss() == Miss::fuel) return std::nullopt;
        break;
      }
      out.push_back(*s);
    }
    return GraphEntry{{}, std::move(out)};
  }
  Stream apply(const Stream&) const override { return out_; }

 private:
  Stream out_;
};

class BranchMachine final : public WordMachine {
 public:
  BranchMachine(std::size_t branches, std::function<Stream(Nat)> make)
      : branches_(branches), make_(std::move(make)), cache_(branches) {}

  Word approximate(std::span<const Nat> u, Fuel& fuel) const override {
    if (u.empty() || u[0] >= branches_) return {};
    return read_available(output(u[0]), fuel);
  }
  std::optional<GraphEntry> graph_entry(std::size_t n, Fuel& fuel) const override {
    const Nat b = n % branches_;
    const std::size_t k = n / branches_ + 1;
    const Stream out = output(b);
    Word v;
    for (std::size_t i = 0; i < k; ++i) {
      const Sym s = out.at(i, fuel);
      if (!s) {
        if (s.miss() == Miss::fuel) return std::nullopt;
        break;
      }
      v.push_back(*s);
    }
    return GraphEntry{{b}, std::move(v)};
  }
  Stream apply(const Stream& x) const override {
    auto self = std::static_pointer_cast<const BranchMachine>(shared_from_this());
    return resolve([self, x](Fuel& fuel) -> std::optional<Stream> {
      const Sym b = x.at(0, fuel);
      if (!b || *b >= self->branches_) return std::nullopt;
      return self->output(*b);
    });
  }

  Stream output(Nat b) const {
    std::lock_guard lock(mu_);
    if (!cache_[b]) cache_[b] = make_(b);
    return *cache_[b];
  }

 private:
  std::size_t branches_;
  std::function<Stream(Nat)> make_;
  mutable std::recursive_mutex mu_;
  mutable std::vector<std::optional<Stream>> cache_;
};

}  // namespace

Machine universal_machine() {
  static const Machine m = std::make_shared<UniversalMachine>();
  return m;
}

Name universal_name() {
  static const Name n = encode_machine(universal_machine());
  return n;
}

namespace {

class ComposeMachine final : public WordMachine {
 public:
  ComposeMachine(Name q1, Name q2) : q1_(std::move(q1)), q2_(std::move(q2)) {}
  Word approximate(std::span<const Nat> w, Fuel& fuel) const override {
    Fuel half(fuel.remaining() / 2);
    const Word n2 = read_available(q2_, half);
    fuel.spend(half.used());
    const Word n1 = read_available(q1_, fuel);
    return eval_name(n1, eval_name(n2, w));
  }
  Stream apply(const Stream& x) const override { return eval_stream(q1_, eval_stream(q2_, x)); }

 private:
  Name q1_;
  Name q2_;
};

}  // namespace

Name compose_names(const Name& q1, const Name& q2) {
  return encode_machine(std::make_shared<ComposeMachine>(q1, q2));
}

Machine identity_machine() {
  static const Machine m = std::make_shared<IdentityMachine>();
  return m;
}

Machine table_machine(std::vector<GraphEntry> entries) {
  return std::make_shared<TableMachine>(std::move(entries));
}

Machine map_machine(std::function<Nat(Nat)> fn) { return std::make_shared<MapMachine>(std::move(fn)); }

Machine prepend_machine(Nat head) { return std::make_shared<PrependMachine>(head); }

Machine functional_machine(StreamFn fn) { return std::make_shared<FunctionalMachine>(std::move(fn)); }

Machine constant_machine(Stream out) { return std::make_shared<ConstantMachine>(std::move(out)); }

Machine branch_machine(std::size_t branches, std::function<Stream(Nat)> make) {
  if (branches == 0) throw std::invalid_argument("branch_machine: no branches");
  return std::make_shared<BranchMachine>(branches, std::move(make));
}

Machine seeded_machine(std::uint64_t seed) {
  const std::uint64_t h = mix_seed(seed, 0x5eed);
  const Nat a = 1 + h % 5;
  const Nat b = (h >> 8) % 7;
  const Nat m = 2 + (h >> 16) % 9;
  switch ((h >> 24) % 7) {
    case 0:
      return map_machine([a, b, m](Nat x) { return (a * x + b) % m; });
    case 1:
      return prepend_machine(b);
    case 2:
      return std::make_shared<DropMachine>();
    case 3:
      return std::make_shared<PrefixSumMachine>(m);
    case 4:
      return std::make_shared<PairSumMachine>();
    case 5:
      return identity_machine();
    default: {
      std::vector<GraphEntry> entries;
      const std::size_t count = 1 + (h >> 32) % 6;
      for (std::size_t i = 0; i < count; ++i) {
        const std::uint64_t r = mix_seed(h, i);
        Word in, out;
        for (std::size_t j = 0; j < r % 3; ++j) in.push_back((r >> (8 + 2 * j)) % 3);
        for (std::size_t j = 0; j < 1 + (r >> 20) % 3; ++j) out.push_back((r >> (24 + 4 * j)) % 10);
        entries.push_back({std::move(in), std::move(out)});
      }
      return table_machine(std::move(entries));
    }
  }
}

Name constant_name(const Stream& out) { return encode_machine(constant_machine(out)); }

Name with_head(Nat head, const Name& name) {
  const Stream s = cons(head, name);
  if (const StreamFn* fn = name.semantics()) return with_semantics(s, *fn);
  return s;
}

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}

namespace {

Word parse_word(std::string_view text, std::size_t line) {
  std::istringstream in{std::string(text)};
  std::vector<std::string> tokens{std::istream_iterator<std::string>(in), {}};
  if (tokens.size() == 1 && tokens[0] == "eps") return {};
  if (tokens.empty()) throw ParseError(line, "empty word (write eps)");
  Word w;
  for (const auto& t : tokens) {
    Nat v = 0;
    const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || end != t.data() + t.size()) throw ParseError(line, "bad natural '" + t + "'");
    w.push_back(v);
  }
  return w;
}

std::string format_word(std::span<const Nat> w) {
  if (w.empty()) return "eps";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(w[i]);
  }
  return out;
}

}  // namespace

std::vector<GraphEntry> parse_machine_text(std::string_view text) {
  std::vector<GraphEntry> entries;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    const auto arrow = line.find("->");
    if (arrow == std::string_view::npos) throw ParseError(line_no, "expected 'w -> v'");
    entries.push_back({parse_word(line.substr(0, arrow), line_no), parse_word(line.substr(arrow + 2), line_no)});
  }
  return entries;
}

std::string format_machine_text(std::span<const GraphEntry> entries) {
  std::string out;
  for (const auto& e : entries) out += format_word(e.input) + " -> " + format_word(e.output) + "\n";
  return out;
}

}  // namespace baire
