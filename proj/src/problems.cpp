#include "baire/problems.hpp"

#include <algorithm>
#include <charconv>
#include <random>
#include <sstream>

namespace baire {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::consistent:
      return "consistent";
    case Verdict::undetermined:
      return "undetermined";
    case Verdict::refuted:
      return "refuted";
  }
  return "?";
}

Verdict worst(Verdict a, Verdict b) { return std::max(a, b); }

Index Instance::stage_of(Index k) const {
  for (const Commit& c : commits)
    if (c.coordinate == k) return c.stage;
  return default_stage;
}

Stream encode_value(Nat v) { return from_prefix({v}); }

Nat cylinder_code(std::span<const Nat> bits) {
  Nat v = 1;
  for (Nat b : bits) v = 2 * v + (b & 1);
  return v - 1;
}

Word cylinder_word(Nat code) {
  Word w;
  for (Nat v = code + 1; v > 1; v /= 2) w.push_back(v & 1);
  std::reverse(w.begin(), w.end());
  return w;
}

SierpinskiValue sierpinski_value(const Stream& p, std::size_t depth, std::uint64_t budget) {
  Fuel fuel(budget);
  for (Index i = 0; i < depth; ++i) {
    const Sym s = p.at(i, fuel);
    if (!s) {
      if (s.miss() == Miss::input) return {};
      return {false, std::nullopt};
    }
    if (*s != 0) return {true, i};
  }
  return {};
}

namespace {

constexpr std::uint64_t kCheckBudget = 1'000'000;

std::mt19937_64 rng_for(std::uint64_t seed, std::uint64_t salt) { return std::mt19937_64(mix_seed(seed, salt)); }

Stream periodic(const Instance& inst) { return from_prefix(inst.prefix, inst.cycle.empty() ? Word{0} : inst.cycle); }

Nat periodic_at(const Word& prefix, const Word& cycle, Index k) {
  if (k < prefix.size()) return prefix[k];
  return cycle[(k - prefix.size()) % cycle.size()];
}

// Discrete answers: value first, then zeros.
Verdict check_tail(std::span<const Nat> out, std::size_t depth) {
  for (std::size_t i = 1; i < std::min(out.size(), depth); ++i)
    if (out[i] != 0) return Verdict::refuted;
  return Verdict::consistent;
}

Word public_prefix(const Instance& inst, std::size_t depth) { return inst.public_name.prefix(depth, kCheckBudget); }

bool excludes(const Word& pub, Nat v) { return std::find(pub.begin(), pub.end(), v + 1) != pub.end(); }

// Negative information: each excluded value n appears as n + 1, separated by
// a few padding zeros.
Word spread(std::mt19937_64& rng, const Word& excluded, std::size_t max_gap) {
  Word w;
  for (Nat x : excluded) {
    for (std::size_t g = rng() % (max_gap + 1); g > 0; --g) w.push_back(0);
    w.push_back(x + 1);
  }
  return w;
}

Problem make_id() {
  Problem p;
  p.name = "id";
  p.generate = [](std::uint64_t seed) {
    auto rng = rng_for(seed, 1);
    Instance inst;
    for (int i = 0; i < 16; ++i) inst.prefix.push_back(rng() % 10);
    inst.cycle.clear();
    for (std::size_t i = 0, n = 1 + rng() % 3; i < n; ++i) inst.cycle.push_back(rng() % 10);
    return inst;
  };
  p.build = periodic;
  p.check = [](const Instance& inst, std::span<const Nat> out, std::size_t depth) {
    const Word pub = public_prefix(inst, depth);
    const std::size_t n = std::min(out.size(), depth);
    for (std::size_t i = 0; i < n; ++i)
      if (out[i] != pub[i]) return Verdict::refuted;
    return n < depth ? Verdict::undetermined : Verdict::consistent;
  };
  p.solve = [](const Instance& inst) { return inst.public_name; };
  return p;
}

Problem make_lpo() {
  Problem p;
  p.name = "lpo";
  p.branches = 2;
  p.generate = [](std::uint64_t seed) {
    auto rng = rng_for(seed, 2);
    Instance inst;
    if (rng() % 2) {
      const Index k = rng() % 24;
      inst.prefix.assign(k, 0);
      inst.prefix.push_back(1 + rng() % 9);
      inst.witness.first_nonzero = k;
    }
    return inst;
  };
  p.build = periodic;
  p.check = [](const Instance& inst, std::span<const Nat> out, std::size_t depth) {
    if (out.empty() || depth == 0) return Verdict::undetermined;
    if (out[0] > 1 || check_tail(out, depth) == Verdict::refuted) return Verdict::refuted;
    const Word pub = public_prefix(inst, depth);
    const bool nonzero = std::any_of(pub.begin(), pub.end(), [](Nat x) { return x != 0; });
    if (out[0] == 1) return nonzero ? Verdict::refuted : Verdict::consistent;
    return nonzero ? Verdict::consistent : Verdict::undetermined;
  };
  p.solve = [](const Instance& inst) { return encode_value(inst.witness.first_nonzero ? 0 : 1); };
  return p;
}

Verdict check_choice(const Instance& inst, std::span<const Nat> out, std::size_t depth, Nat bound) {
  if (out.empty() || depth == 0) return Verdict::undetermined;
  if (out[0] >= bound || check_tail(out, depth) == Verdict::refuted) return Verdict::refuted;
  return excludes(public_prefix(inst, depth), out[0]) ? Verdict::refuted : Verdict::consistent;
}

Problem make_c2(bool unique) {
  Problem p;
  p.name = unique ? "c2-unique" : "c2";
  p.branches = 2;
  p.generate = [unique](std::uint64_t seed) {
    auto rng = rng_for(seed, 3);
    Instance inst;
    if (unique || rng() % 3 != 0) {
      const Nat b = rng() % 2;
      inst.prefix.assign(rng() % 8, 0);
      inst.prefix.push_back(b + 1);
      inst.witness.value = 1 - b;
    } else {
      inst.witness.value = rng() % 2;
    }
    return inst;
  };
  p.build = periodic;
  p.check = [](const Instance& inst, std::span<const Nat> out, std::size_t depth) {
    return check_choice(inst, out, depth, 2);
  };
  p.solve = [](const Instance& inst) { return encode_value(inst.witness.value); };
  return p;
}

constexpr Nat kChoiceBound = 8;

Problem make_cn() {
  Problem p;
  p.name = "cn";
  // Answers of kChoiceBound or more are never excluded and share a branch.
  p.branches = kChoiceBound + 1;
  p.generate = [](std::uint64_t seed) {
    auto rng = rng_for(seed, 4);
    Instance inst;
    inst.witness.value = rng() % kChoiceBound;
    Word excluded;
    for (Nat x = 0; x < kChoiceBound; ++x)
      if (x != inst.witness.value && rng() % 2) excluded.push_back(x);
    std::shuffle(excluded.begin(), excluded.end(), rng);
    inst.prefix = spread(rng, excluded, 2);
    return inst;
  };
  p.build = periodic;
  p.check = [](const Instance& inst, std::span<const Nat> out, std::size_t depth) {
    return check_choice(inst, out, depth, UINT64_MAX);
  };
  p.solve = [](const Instance& inst) { return encode_value(inst.witness.value); };
  return p;
}

Problem make_wkl() {
  Problem p;
  p.name = "wkl";
  p.generate = [](std::uint64_t seed) {
    auto rng = rng_for(seed, 5);
    Instance inst;
    for (int i = 0; i < 8; ++i) inst.witness.prefix.push_back(rng() % 2);
    inst.witness.cycle = {0};
    Word excluded;
    for (int tries = 0, n = static_cast<int>(rng() % 5); tries < n; ++tries) {
      Word w;
      for (std::size_t i = 0, len = 1 + rng() % 6; i < len; ++i) w.push_back(rng() % 2);
      const bool on_path = std::equal(w.begin(), w.end(), inst.witness.prefix.begin());
      if (!on_path) excluded.push_back(cylinder_code(w));
    }
    inst.prefix = spread(rng, excluded, 2);
    return inst;
  };
  p.build = periodic;
  p.check = [](const Instance& inst, std::span<const Nat> out, std::size_t depth) {
    const std::size_t n = std::min(out.size(), depth);
    for (std::size_t i = 0; i < n; ++i)
      if (out[i] > 1) return Verdict::refuted;
    for (Nat x : public_prefix(inst, depth)) {
      if (x == 0) continue;
      const Word w = cylinder_word(x - 1);
      if (w.size() <= n && std::equal(w.begin(), w.end(), out.begin())) return Verdict::refuted;
    }
    return n < depth ? Verdict::undetermined : Verdict::consistent;
  };
  p.solve = [](const Instance& inst) { return from_prefix(inst.witness.prefix, inst.witness.cycle); };
  return p;
}

// Coordinate k of stage n: the committed value from its stage on, seeded
// noise before.
Stream build_lim(const Instance& inst) {
  auto shared = std::make_shared<const Instance>(inst);
  return tuple_countable([shared](Index n) {
    return tabulate([shared, n](Index k) -> Nat {
      if (n >= shared->stage_of(k)) {
        for (const Commit& c : shared->commits)
          if (c.coordinate == k) return c.value;
        return periodic_at(shared->prefix, shared->cycle, k);
      }
      return mix_seed(mix_seed(shared->seed, n), k) % 10;
    });
  });
}

Problem make_lim() {
  Problem p;
  p.name = "lim";
  p.generate = [](std::uint64_t seed) {
    auto rng = rng_for(seed, 6);
    Instance inst;
    for (int i = 0; i < 8; ++i) inst.prefix.push_back(rng() % 10);
    Word limit = inst.prefix;
    for (int i = 0; i < 3; ++i) {
      const Index k = rng() % 8;
      if (std::any_of(inst.commits.begin(), inst.commits.end(), [k](const Commit& c) { return c.coordinate == k; }))
        continue;
      const Commit c{k, rng() % 10, 1 + rng() % 9};
      inst.commits.push_back(c);
      limit[k] = c.value;
    }
    inst.witness.prefix = limit;
    inst.witness.cycle = inst.cycle;
    return inst;
  };
  p.build = build_lim;
  p.check = [](const Instance& inst, std::span<const Nat> out, std::size_t depth) {
    const std::size_t n = std::min(out.size(), depth);
    for (std::size_t k = 0; k < n; ++k) {
      const auto expected = project(inst.public_name, inst.stage_of(k)).at(k, kCheckBudget);
      if (!expected) return Verdict::undetermined;
      if (out[k] != *expected) return Verdict::refuted;
    }
    return n < depth ? Verdict::undetermined : Verdict::consistent;
  };
  p.solve = [](const Instance& inst) { return from_prefix(inst.witness.prefix, inst.witness.cycle); };
  return p;
}

Problem make_limN() {
  Problem p;
  p.name = "limN";
  p.branches = kChoiceBound;
  p.generate = [](std::uint64_t seed) {
    auto rng = rng_for(seed, 7);
    Instance inst;
    Nat v = rng() % kChoiceBound;
    inst.prefix.push_back(v);
    for (std::size_t changes = rng() % 4; changes > 0; --changes) {
      for (std::size_t g = rng() % 4; g > 0; --g) inst.prefix.push_back(v);
      v = (v + 1 + rng() % (kChoiceBound - 1)) % kChoiceBound;
      inst.prefix.push_back(v);
    }
    inst.cycle = {v};
    inst.commits = {{0, v, inst.prefix.size() - 1}};
    inst.witness.value = v;
    return inst;
  };
  p.build = periodic;
  p.check = [](const Instance& inst, std::span<const Nat> out, std::size_t depth) {
    if (out.empty() || depth == 0) return Verdict::undetermined;
    if (check_tail(out, depth) == Verdict::refuted) return Verdict::refuted;
    const auto settled = inst.public_name.at(inst.stage_of(0), kCheckBudget);
    if (!settled) return Verdict::undetermined;
    return out[0] == *settled ? Verdict::consistent : Verdict::refuted;
  };
  p.solve = [](const Instance& inst) { return encode_value(inst.witness.value); };
  return p;
}

struct Catalog {
  std::vector<std::unique_ptr<Problem>> problems;
  std::map<std::string, const Problem*, std::less<>> by_name;

  Catalog() {
    for (Problem p : {make_id(), make_lpo(), make_c2(false), make_c2(true), make_cn(), make_lim(), make_limN(),
                      make_wkl()}) {
      problems.push_back(std::make_unique<Problem>(std::move(p)));
      by_name[problems.back()->name] = problems.back().get();
    }
    by_name["llpo"] = by_name.at("c2");
    by_name["c-cantor"] = by_name.at("wkl");
  }
};

const Catalog& catalog() {
  static const Catalog c;
  return c;
}

}  // namespace

const Problem* find_problem(std::string_view name) {
  const auto& m = catalog().by_name;
  const auto it = m.find(name);
  return it == m.end() ? nullptr : it->second;
}

const Problem& problem(std::string_view name) {
  if (const Problem* p = find_problem(name)) return *p;
  throw std::invalid_argument("unknown problem '" + std::string(name) + "'");
}

std::vector<std::string> problem_names() {
  std::vector<std::string> names;
  for (const auto& [name, p] : catalog().by_name) names.push_back(name);
  return names;
}

InstanceRegistry& InstanceRegistry::global() {
  static InstanceRegistry r;
  return r;
}

std::shared_ptr<const Instance> InstanceRegistry::add(Instance inst) {
  auto shared = std::make_shared<const Instance>(std::move(inst));
  std::lock_guard lock(mu_);
  by_identity_[shared->public_name.identity()] = shared;
  return shared;
}

std::shared_ptr<const Instance> InstanceRegistry::find(const Stream& s) const {
  std::lock_guard lock(mu_);
  const auto it = by_identity_.find(s.identity());
  return it == by_identity_.end() ? nullptr : it->second;
}

std::shared_ptr<const Instance> register_instance(Instance inst) {
  return InstanceRegistry::global().add(std::move(inst));
}

std::shared_ptr<const Instance> make_instance(const Problem& p, std::uint64_t seed) {
  Instance inst = p.generate(seed);
  inst.problem = p.name;
  inst.seed = seed;
  inst.public_name = p.build(inst);
  return register_instance(std::move(inst));
}

Verdict check_stream(const Instance& inst, const Stream& output, std::size_t depth, std::uint64_t budget) {
  const Word out = output.prefix(depth, budget);
  return problem(inst.problem).check(inst, out, depth);
}

StreamFn oracle_solver(const Problem& p) {
  return [&p](const Stream& x) {
    const auto inst = InstanceRegistry::global().find(x);
    if (!inst) throw std::invalid_argument("no registered " + p.name + " instance for this input");
    return p.solve(*inst);
  };
}

namespace {

std::string join(std::span<const Nat> w) {
  std::string s;
  for (Nat x : w) {
    s += ' ';
    s += std::to_string(x);
  }
  return s;
}

std::vector<std::string> split(std::string_view line) {
  std::istringstream in{std::string(line)};
  return {std::istream_iterator<std::string>(in), {}};
}

Nat to_nat(const std::string& t, std::size_t line) {
  Nat v = 0;
  const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || end != t.data() + t.size()) throw ParseError(line, "bad natural '" + t + "'");
  return v;
}

// `a b c cycle d e` starting at tokens[from].
std::pair<Word, Word> parse_periodic(const std::vector<std::string>& tokens, std::size_t from, std::size_t line) {
  Word prefix, cycle;
  bool in_cycle = false;
  for (std::size_t i = from; i < tokens.size(); ++i) {
    if (tokens[i] == "cycle") {
      if (in_cycle) throw ParseError(line, "repeated 'cycle'");
      in_cycle = true;
      continue;
    }
    (in_cycle ? cycle : prefix).push_back(to_nat(tokens[i], line));
  }
  if (!in_cycle) throw ParseError(line, "missing 'cycle'");
  if (cycle.empty()) throw ParseError(line, "empty cycle");
  return {prefix, cycle};
}

}  // namespace

std::string format_instance(const Instance& inst) {
  std::ostringstream out;
  out << "problem " << inst.problem << " seed " << inst.seed << "\n";
  out << "public:" << join(inst.prefix) << " cycle" << join(inst.cycle) << "\n";
  if (inst.default_stage) out << "default-stage " << inst.default_stage << "\n";
  for (const Commit& c : inst.commits) out << "commit " << c.coordinate << ' ' << c.value << ' ' << c.stage << "\n";
  out << "witness: ";
  const Witness& w = inst.witness;
  if (inst.problem == "lpo") {
    if (w.first_nonzero)
      out << "first-nonzero " << *w.first_nonzero;
    else
      out << "all-zero";
  } else if (inst.problem == "wkl" || inst.problem == "lim") {
    out << "path" << join(w.prefix) << " cycle" << join(w.cycle);
  } else if (inst.problem == "id") {
    out << "none";
  } else {
    out << "value " << w.value;
  }
  out << "\n";
  return out.str();
}

Instance parse_instance(std::string_view text) {
  Instance inst;
  bool header = false, pub = false, wit = false;
  std::size_t line_no = 0, pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto tokens = split(line);
    if (tokens.empty()) continue;
    const std::string& key = tokens[0];
    if (key == "problem") {
      if (tokens.size() != 4 || tokens[2] != "seed") throw ParseError(line_no, "expected 'problem <name> seed <n>'");
      const Problem* p = find_problem(tokens[1]);
      if (!p) throw ParseError(line_no, "unknown problem '" + tokens[1] + "'");
      inst.problem = p->name;
      inst.seed = to_nat(tokens[3], line_no);
      header = true;
    } else if (key == "public:") {
      std::tie(inst.prefix, inst.cycle) = parse_periodic(tokens, 1, line_no);
      pub = true;
    } else if (key == "default-stage") {
      if (tokens.size() != 2) throw ParseError(line_no, "expected 'default-stage <s>'");
      inst.default_stage = to_nat(tokens[1], line_no);
    } else if (key == "commit") {
      if (tokens.size() != 4) throw ParseError(line_no, "expected 'commit <k> <v> <s>'");
      inst.commits.push_back({to_nat(tokens[1], line_no), to_nat(tokens[2], line_no), to_nat(tokens[3], line_no)});
    } else if (key == "witness:") {
      if (tokens.size() < 2) throw ParseError(line_no, "empty witness");
      const std::string& kind = tokens[1];
      if (kind == "none") {
      } else if (kind == "all-zero") {
        inst.witness.first_nonzero.reset();
      } else if (kind == "first-nonzero" && tokens.size() == 3) {
        inst.witness.first_nonzero = to_nat(tokens[2], line_no);
      } else if (kind == "value" && tokens.size() == 3) {
        inst.witness.value = to_nat(tokens[2], line_no);
      } else if (kind == "path") {
        std::tie(inst.witness.prefix, inst.witness.cycle) = parse_periodic(tokens, 2, line_no);
      } else {
        throw ParseError(line_no, "bad witness");
      }
      wit = true;
    } else {
      throw ParseError(line_no, "unknown record '" + key + "'");
    }
  }
  if (!header) throw ParseError(line_no, "missing 'problem' header");
  if (!pub) throw ParseError(line_no, "missing 'public:' line");
  if (!wit) throw ParseError(line_no, "missing 'witness:' line");
  inst.public_name = problem(inst.problem).build(inst);
  return inst;
}

namespace {

// Answers whose first symbol selects branch b lead to state(history + b).
class ProgramMachine final : public WordMachine {
 public:
  ProgramMachine(std::shared_ptr<const Loop> loop, Word history)
      : loop_(std::move(loop)), history_(std::move(history)) {}

  Word approximate(std::span<const Nat> u, Fuel& fuel) const override {
    if (u.empty()) return {};
    return read_available(next(u[0]), fuel);
  }
  std::optional<GraphEntry> graph_entry(std::size_t n, Fuel& fuel) const override {
    const auto [j, k] = cantor_unpair(n);
    const Stream out = next(j);
    Word v;
    for (Index i = 0; i <= k; ++i) {
      const Sym s = out.at(i, fuel);
      if (!s) {
        if (s.miss() == Miss::fuel) return std::nullopt;
        break;
      }
      v.push_back(*s);
    }
    return GraphEntry{{j}, std::move(v)};
  }
  Stream apply(const Stream& a) const override {
    auto self = std::static_pointer_cast<const ProgramMachine>(shared_from_this());
    return resolve([self, a](Fuel& fuel) -> std::optional<Stream> {
      const Sym b = a.at(0, fuel);
      if (!b) return std::nullopt;
      return self->next(*b);
    });
  }

 private:
  Stream next(Nat answer) const {
    Word h = history_;
    h.push_back(loop_->branch_of(answer));
    return loop_->state(h);
  }

  std::shared_ptr<const Loop> loop_;
  Word history_;
};

}  // namespace

Loop::Loop(const Problem& step, std::uint64_t seed, std::size_t length, DataGen gen)
    : step_(&step), seed_(seed), length_(length), gen_(std::move(gen)) {
  if (step.branches == 0) throw std::invalid_argument("loop step problem needs discrete answers: " + step.name);
}

std::shared_ptr<const Loop> Loop::make(const Problem& step, std::uint64_t seed, std::size_t length, DataGen gen) {
  return std::shared_ptr<const Loop>(new Loop(step, seed, length, std::move(gen)));
}

Nat Loop::head(std::size_t i) const {
  if (length_ == kEndless) return 1;
  return i < length_ ? length_ - i : 0;
}

bool Loop::on_true_path(const Word& history) const {
  Word h;
  for (Nat b : history) {
    const auto answer = step_->solve(*data(h)).at(0, kCheckBudget);
    if (!answer || branch_of(*answer) != b) return false;
    h.push_back(b);
  }
  return true;
}

std::shared_ptr<const Instance> Loop::data(const Word& history) const {
  {
    std::lock_guard lock(mu_);
    if (const auto it = data_.find(history); it != data_.end()) return it->second;
  }
  std::uint64_t s = mix_seed(seed_, 0x100 + history.size());
  for (Nat b : history) s = mix_seed(s, b + 1);
  std::shared_ptr<const Instance> inst;
  if (gen_) {
    inst = register_instance(gen_(s, history.size(), on_true_path(history)));
  } else {
    inst = make_instance(*step_, s);
  }
  std::lock_guard lock(mu_);
  return data_.emplace(history, inst).first->second;
}

Name Loop::program(const Word& history) const {
  std::lock_guard lock(mu_);
  if (const auto it = programs_.find(history); it != programs_.end()) return it->second;
  const Name name = with_head(head(history.size()), encode_machine(std::make_shared<ProgramMachine>(shared_from_this(), history)));
  return programs_.emplace(history, name).first->second;
}

Stream Loop::state(const Word& history) const {
  std::lock_guard lock(mu_);
  if (const auto it = states_.find(history); it != states_.end()) return it->second;
  const Stream s = pair_stream(program(history), data(history)->public_name);
  return states_.emplace(history, s).first->second;
}

Word Loop::true_history(std::size_t steps) const {
  Word h;
  while (h.size() < steps) {
    const auto answer = step_->solve(*data(h)).at(0, kCheckBudget);
    h.push_back(branch_of(answer.value_or(0)));
  }
  return h;
}

constexpr std::size_t kRunFrontier = 256;

RunCheck check_run(const Loop& loop, const std::function<Word(std::size_t)>& observed, std::size_t steps,
                   std::size_t depth) {
  RunCheck rc;
  // Compares an observed prefix with the expected state; short observations
  // are undetermined unless they already disagree.
  auto compare = [depth](const Word& obs, const Stream& expected) {
    const Word exp = expected.prefix(depth, kCheckBudget);
    const std::size_t n = std::min(obs.size(), exp.size());
    if (!std::equal(obs.begin(), obs.begin() + static_cast<std::ptrdiff_t>(n), exp.begin())) return Verdict::refuted;
    return n < depth ? Verdict::undetermined : Verdict::consistent;
  };
  rc.verdict = compare(observed(0), loop.initial());
  if (rc.verdict != Verdict::consistent) return rc;
  // Distinct answers can give states that agree up to `depth`, so every
  // history still matching the observations is kept.
  std::vector<Word> frontier{Word{}};
  for (std::size_t i = 0; i < steps; ++i) {
    const Word obs = observed(i + 1);
    Verdict best = Verdict::refuted;
    std::vector<Word> next;
    for (const Word& hist : frontier) {
      const auto data = loop.data(hist);
      std::vector<Nat> seen;
      for (Nat b = 0; b <= loop.branches(); ++b) {
        const Nat branch = loop.branch_of(b);
        if (std::find(seen.begin(), seen.end(), branch) != seen.end()) continue;
        Word answer(std::max<std::size_t>(depth, 1), 0);
        answer[0] = b;
        if (loop.step().check(*data, answer, depth) == Verdict::refuted) continue;
        seen.push_back(branch);
        Word h = hist;
        h.push_back(branch);
        const Verdict v = compare(obs, loop.state(h));
        if (v > best) continue;
        if (v < best) next.clear();
        best = v;
        if (next.size() < kRunFrontier) next.push_back(std::move(h));
      }
    }
    rc.at = i + 1;
    if (best != Verdict::consistent) {
      rc.verdict = best;
      rc.history = frontier.front();
      return rc;
    }
    frontier = std::move(next);
    rc.steps = i + 1;
  }
  rc.history = frontier.front();
  rc.at = 0;
  return rc;
}

}  // namespace baire
