#include "baire/reductions.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <random>
#include <sstream>

namespace baire {

namespace {

constexpr std::uint64_t kCaseBudget = 10'000'000;
constexpr Nat kLimValues = 8;

std::vector<std::uint64_t> sorted(std::span<const std::uint64_t> seeds) {
  std::vector<std::uint64_t> s(seeds.begin(), seeds.end());
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

// The first symbol of `s`, clamped, then zeros.
Stream clamped_value(const Stream& s, Index at, Nat bound) {
  return resolve([s, at, bound](Fuel& fuel) -> std::optional<Stream> {
    const Sym v = s.at(at, fuel);
    if (!v) return std::nullopt;
    return encode_value(std::min<Nat>(*v, bound - 1));
  });
}

}  // namespace

std::size_t CheckReport::count(Verdict v) const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [v](const CheckRecord& r) { return r.verdict == v; }));
}

std::string CheckReport::format() const {
  std::ostringstream os;
  for (const CheckRecord& r : records) {
    os << "check " << witness << " seed " << r.seed << " depth " << r.depth << " verdict " << to_string(r.verdict);
    if (!r.detail.empty()) os << ' ' << r.detail;
    os << '\n';
  }
  os << "summary " << witness << " seeds " << records.size() << " consistent " << count(Verdict::consistent)
     << " undetermined " << count(Verdict::undetermined) << " refuted " << count(Verdict::refuted) << " applicable "
     << applicable << " fuel " << fuel << " note " << kDisclaimer << '\n';
  return os.str();
}

StreamFn translating(const ReductionWitness& w) {
  if (!w.translate) return w.K;
  return [K = w.K, translate = w.translate](const Stream& x) {
    const Stream y = K(x);
    auto& registry = InstanceRegistry::global();
    if (const auto f = registry.find(x); f && !registry.find(y)) {
      Instance g = translate(*f, y);
      g.public_name = y;
      registry.add(std::move(g));
    }
    return y;
  };
}

CheckReport check_reduction(const Suite& f_suite, const Solver& g_realizer, const ReductionWitness& w,
                            std::span<const std::uint64_t> seeds, std::size_t depth) {
  CheckReport report;
  report.witness = w.name;
  const StreamFn K = translating(w);
  for (std::uint64_t seed : sorted(seeds)) {
    const Case c = f_suite(seed);
    Fuel fuel(kCaseBudget);
    CheckRecord rec{seed, depth, Verdict::consistent, {}};
    try {
      const Stream y = g_realizer(K(c.input));
      const Stream out = w.strong ? w.H(y) : w.H(pair_stream(c.input, y));
      rec.verdict = c.check(out, depth, fuel);
    } catch (const std::invalid_argument& e) {
      throw TranslationMissing(w.name + ": " + e.what());
    }
    if (c.applicable(depth)) {
      ++report.applicable;
    } else {
      rec.detail = "not-applicable";
    }
    report.fuel += fuel.used();
    report.records.push_back(std::move(rec));
  }
  return report;
}

AdviceRun::AdviceRun(StreamFn F1, Stream q0, Stream advice)
    : F1_(std::move(F1)), advice_(std::move(advice)), states_{std::move(q0)} {}

Stream AdviceRun::state(Index i) const {
  std::lock_guard lock(mu_);
  while (states_.size() <= i) {
    const Index k = states_.size() - 1;
    auto [q, p] = unpair_stream(states_.back());
    consulted_.push_back(k);
    states_.push_back(eval_stream(q, F1_(pair_stream(p, project(advice_, k)))));
  }
  return states_[i];
}

std::vector<Index> AdviceRun::consulted() const {
  std::lock_guard lock(mu_);
  return consulted_;
}

NonDetWitness nondet_lift_inverse_limit(const NonDetWitness& w) {
  NonDetWitness out;
  out.name = w.name + "-lifted";
  out.unique = w.unique;
  const StreamFn F1 = w.F1;
  const StreamFn F2 = w.F2;
  out.F1 = [F1](const Stream& x) {
    auto run = std::make_shared<const AdviceRun>(F1, first(x), second(x));
    return tuple_countable([run](Index i) { return run->state(i); });
  };
  out.F2 = [F1, F2](const Stream& x) {
    auto run = std::make_shared<const AdviceRun>(F1, first(x), second(x));
    const Stream advice = second(x);
    const Stream checks = tuple_countable(
        [run, F2, advice](Index i) { return F2(pair_stream(second(run->state(i)), project(advice, i))); });
    return map_symbols(checks, [](Nat v) -> Nat { return v == 0 ? 0 : 1; });
  };
  out.advice.name = w.advice.name + "^N";
  out.advice.sample = [sample = w.advice.sample](std::uint64_t seed) {
    return tuple_countable([sample, seed](Index i) { return sample(mix_seed(seed, i)); });
  };
  return out;
}

CheckReport check_nondet(const NonDetWitness& w, const Suite& suite, std::span<const std::uint64_t> seeds,
                         std::size_t depth, const NonDetOptions& opts) {
  CheckReport report;
  report.witness = w.name;
  for (std::uint64_t seed : sorted(seeds)) {
    const Case c = suite(seed);
    Fuel fuel(kCaseBudget);
    const std::size_t flags = c.flag_depth(depth);
    Verdict verdict = Verdict::consistent;
    std::string failure;

    if (c.helpful_advice) {
      const Stream x = pair_stream(c.input, *c.helpful_advice);
      const SierpinskiValue sv = sierpinski_value(w.F2(x), flags, opts.budget);
      if (sv.nonzero_at) {
        verdict = Verdict::refuted;
        failure = "helpful-advice-flagged-at " + std::to_string(*sv.nonzero_at);
      } else {
        if (!sv.determined) verdict = Verdict::undetermined;
        const Verdict v = c.check(w.F1(x), depth, fuel);
        if (v == Verdict::refuted) failure = "helpful-advice-output-refuted";
        verdict = worst(verdict, v);
      }
    } else {
      verdict = Verdict::undetermined;
      failure = "no-helpful-advice";
    }

    std::size_t flagged = 0;
    for (std::size_t j = 0; j < opts.adversarial; ++j) {
      const Stream x = pair_stream(c.input, w.advice.sample(mix_seed(seed, 0xad00 + j)));
      const SierpinskiValue sv = sierpinski_value(w.F2(x), flags, opts.budget);
      if (sv.nonzero_at) {
        ++flagged;
        continue;
      }
      Verdict v = c.check(w.F1(x), depth, fuel);
      // With the flags unread the advice may still be unhelpful.
      if (!sv.determined && v == Verdict::refuted) v = Verdict::undetermined;
      if (v == Verdict::refuted && failure.empty()) failure = "unflagged-advice-" + std::to_string(j) + "-output-refuted";
      verdict = worst(verdict, v);
    }

    CheckRecord rec{seed, depth, verdict, {}};
    if (!c.applicable(depth)) {
      rec.detail = "not-applicable ";
    } else {
      ++report.applicable;
    }
    rec.detail += "adversarial " + std::to_string(opts.adversarial) + " flagged " + std::to_string(flagged);
    if (!failure.empty()) rec.detail += ' ' + failure;
    report.fuel += fuel.used();
    report.records.push_back(std::move(rec));
  }
  return report;
}

LimLoop limN_loop(std::uint64_t seed, std::size_t length) {
  std::mt19937_64 rng(mix_seed(seed, 0x1153));
  const std::size_t levels = std::min<std::size_t>(length, 6);
  std::vector<MindChange> changes;
  if (levels > 0) {
    for (std::size_t n = rng() % 4; n > 0; --n) {
      MindChange c;
      c.level = rng() % levels;
      c.position = 1 + rng() % 12;
      c.value = rng() % kLimValues;
      changes.push_back(c);
    }
  }
  return limN_loop(seed, length, std::move(changes));
}

LimLoop limN_loop(std::uint64_t seed, std::size_t length, std::vector<MindChange> changes) {
  auto initial = [seed](std::size_t level) -> Nat { return mix_seed(seed, 0x5eed + level) % kLimValues; };
  std::sort(changes.begin(), changes.end(), [](const MindChange& a, const MindChange& b) {
    return std::pair(a.level, a.position) < std::pair(b.level, b.position);
  });
  // Keep only real changes: a later position and a different value.
  std::vector<MindChange> actual;
  for (MindChange c : changes) {
    c.value %= kLimValues;
    if (c.position == 0) continue;
    const bool same_level = !actual.empty() && actual.back().level == c.level;
    const Nat current = same_level ? actual.back().value : initial(c.level);
    if (same_level && actual.back().position >= c.position) continue;
    if (c.value == current) continue;
    actual.push_back(c);
  }
  Loop::DataGen gen = [initial, actual](std::uint64_t s, std::size_t level, bool on_true_path) {
    Instance inst;
    inst.problem = "limN";
    inst.seed = s;
    Nat v = on_true_path ? initial(level) : mix_seed(s, 0x11) % kLimValues;
    Word seq{v};
    if (on_true_path) {
      for (const MindChange& c : actual) {
        if (c.level != level) continue;
        while (seq.size() < c.position) seq.push_back(v);
        v = c.value;
        seq.push_back(v);
      }
    }
    inst.commits = {{0, v, seq.size() - 1}};
    inst.prefix = std::move(seq);
    inst.cycle = {v};
    inst.witness.value = v;
    inst.public_name = problem("limN").build(inst);
    return inst;
  };
  return {Loop::make(problem("limN"), seed, length, std::move(gen)), std::move(actual)};
}

LimSim limN_infty_via_lim(const Loop& loop, std::size_t levels, std::size_t stages) {
  LimSim sim;
  Word& h = sim.history;
  for (Index t = 0; t < stages; ++t) {
    for (std::size_t i = 0; i < levels; ++i) {
      const auto data = loop.data(Word(h.begin(), h.begin() + static_cast<std::ptrdiff_t>(i)));
      const std::optional<Nat> s = data->public_name.at(t, kCaseBudget);
      if (!s) break;
      const Nat v = loop.branch_of(*s);
      if (i == h.size()) {
        h.push_back(v);
      } else if (h[i] != v) {
        sim.trace.push_back({t, i, h[i], v});
        ++sim.restarts;
        h.resize(i);
        h.push_back(v);
      }
    }
    sim.stages = t + 1;
  }
  sim.stabilized = h.size() == levels && (sim.trace.empty() || sim.trace.back().stage < stages / 2);
  for (std::size_t i = 0; i <= h.size(); ++i)
    sim.run.push_back(loop.state(Word(h.begin(), h.begin() + static_cast<std::ptrdiff_t>(i))));
  return sim;
}

std::string format_revision(const Revision& r) {
  return "revise stage " + std::to_string(r.stage) + " level " + std::to_string(r.level) + " from " +
         std::to_string(r.from) + " to " + std::to_string(r.to);
}

namespace {

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t j = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > j) out.push_back(line.substr(j, i - j));
  }
  return out;
}

std::uint64_t number(std::string_view tok, std::size_t line) {
  std::uint64_t v = 0;
  const auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || end != tok.data() + tok.size())
    throw ParseError(line, "expected a natural number, got '" + std::string(tok) + "'");
  return v;
}

}  // namespace

LoopSpec parse_loop_spec(std::string_view text) {
  LoopSpec spec;
  bool header = false;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto tok = tokens(line);
    if (tok.empty()) continue;
    if (tok[0] == "loop") {
      if (header) throw ParseError(line_no, "duplicate loop line");
      if (tok.size() != 4 && tok.size() != 6) throw ParseError(line_no, "expected 'loop <problem> seed <n> [length <L>]'");
      if (tok[2] != "seed" || (tok.size() == 6 && tok[4] != "length"))
        throw ParseError(line_no, "expected 'loop <problem> seed <n> [length <L>]'");
      spec.problem = std::string(tok[1]);
      const Problem* p = find_problem(spec.problem);
      if (!p) throw ParseError(line_no, "unknown problem '" + spec.problem + "'");
      if (p->branches == 0) throw ParseError(line_no, "problem '" + spec.problem + "' has no discrete answers");
      spec.seed = number(tok[3], line_no);
      if (tok.size() == 6) spec.length = number(tok[5], line_no);
      header = true;
    } else if (tok[0] == "change") {
      if (tok.size() != 4) throw ParseError(line_no, "expected 'change <level> <position> <value>'");
      if (!spec.changes) spec.changes.emplace();
      spec.changes->push_back({number(tok[1], line_no), number(tok[2], line_no), number(tok[3], line_no)});
    } else if (tok[0] == "changes" && tok.size() == 2 && tok[1] == "none") {
      if (!spec.changes) spec.changes.emplace();
    } else {
      throw ParseError(line_no, "unknown record '" + std::string(tok[0]) + "'");
    }
  }
  if (!header) throw ParseError(line_no, "missing loop line");
  if (spec.changes && problem(spec.problem).name != "limN")
    throw ParseError(line_no, "mind changes apply to limN loops only");
  return spec;
}

std::string format_loop_spec(const LoopSpec& spec) {
  std::string s = "loop " + spec.problem + " seed " + std::to_string(spec.seed);
  if (spec.length != Loop::kEndless) s += " length " + std::to_string(spec.length);
  s += '\n';
  if (spec.changes) {
    if (spec.changes->empty()) s += "changes none\n";
    for (const MindChange& c : *spec.changes)
      s += "change " + std::to_string(c.level) + ' ' + std::to_string(c.position) + ' ' + std::to_string(c.value) + '\n';
  }
  return s;
}

std::shared_ptr<const Loop> make_loop(const LoopSpec& spec) {
  const Problem& p = problem(spec.problem);
  if (p.name == "limN") return spec.changes ? limN_loop(spec.seed, spec.length, *spec.changes).loop
                                            : limN_loop(spec.seed, spec.length).loop;
  if (spec.changes) throw std::invalid_argument("mind changes apply to limN loops only");
  return Loop::make(p, spec.seed, spec.length);
}

// Witness library.

namespace {

Suite problem_suite(const Problem& p) {
  return [&p](std::uint64_t seed) {
    const auto inst = make_instance(p, seed);
    Case c;
    c.seed = seed;
    c.input = inst->public_name;
    c.check = [inst, &p](const Stream& out, std::size_t depth, Fuel& fuel) {
      return p.check(*inst, out.prefix(depth, fuel), depth);
    };
    c.helpful_advice = encode_value(inst->witness.value);
    return c;
  };
}

// Loops of `steps` steps, checked step by step.
Suite loop_suite(const Problem& step, std::size_t steps) {
  return [&step, steps](std::uint64_t seed) {
    const auto loop = Loop::make(step, seed, steps);
    Case c;
    c.seed = seed;
    c.input = loop->initial();
    c.check = [loop, steps](const Stream& out, std::size_t depth, Fuel& fuel) {
      return check_run(*loop, [&](std::size_t i) { return project(out, i).prefix(depth, fuel); }, steps, depth)
          .verdict;
    };
    c.helpful_advice = tuple_countable([loop](Index i) { return encode_value(loop->true_history(i + 1)[i]); });
    // Check ⟨i,n⟩ for every step i < steps and public symbol n < depth.
    c.flag_depth = [steps](std::size_t d) { return cantor_pair(steps - 1, std::max<std::size_t>(d, 1) - 1) + 1; };
    return c;
  };
}

constexpr std::size_t kLoopSteps = 5;
constexpr std::size_t kParallelWidth = 16;
constexpr std::size_t kParallelChecked = 8;

// Tuples of independent c2 instances, cycling with period kParallelWidth.
Suite parallel_c2_suite() {
  return [](std::uint64_t seed) {
    auto parts = std::make_shared<std::vector<std::shared_ptr<const Instance>>>();
    Instance whole;
    whole.problem = "c2-parallel";
    whole.seed = seed;
    for (std::size_t i = 0; i < kParallelWidth; ++i) {
      parts->push_back(make_instance(problem("c2"), mix_seed(seed, i)));
      whole.witness.prefix.push_back(parts->back()->witness.value);
    }
    whole.witness.cycle = whole.witness.prefix;
    whole.public_name = tuple_countable([parts](Index i) { return (*parts)[i % kParallelWidth]->public_name; });
    const auto registered = register_instance(std::move(whole));
    Case c;
    c.seed = seed;
    c.input = registered->public_name;
    c.check = [parts](const Stream& out, std::size_t depth, Fuel& fuel) {
      Verdict v = Verdict::consistent;
      for (Index i = 0; i < kParallelChecked; ++i)
        v = worst(v, problem("c2").check(*(*parts)[i], project(out, i).prefix(depth, fuel), depth));
      return v;
    };
    return c;
  };
}

// Negative information for C_2^ℕ ↦ a tree: an exclusion of b in component i
// excludes every word of length i + 1 ending in b. Position ⟨⟨i,n⟩,m⟩ covers
// the word given by the i bits of m.
Stream parallel_c2_tree(const Stream& t) {
  return lazy([t](Index k, Fuel& fuel) -> Sym {
    const auto [a, m] = cantor_unpair(k);
    const auto [i, n] = cantor_unpair(a);
    if (i >= 62 || m >= (Index{1} << i)) return Sym(0);
    const Sym x = project(t, i).at(n, fuel);
    if (!x) return x;
    if (*x != 1 && *x != 2) return Sym(0);
    Word w;
    for (Index j = 0; j < i; ++j) w.push_back((m >> j) & 1);
    w.push_back(*x - 1);
    return Sym(cylinder_code(w) + 1);
  });
}

StreamFn identity_fn() {
  return [](const Stream& x) { return x; };
}

// C_2 ≤ C_ℕ: keep the exclusions of 0 and 1, exclude every k ≥ 2.
Stream c2_as_cn(const Stream& p) {
  return lazy([p](Index k, Fuel& fuel) -> Sym {
    if (k % 2 == 1) return Sym(k / 2 + 3);
    return p.at(k / 2, fuel);
  });
}

NonDetWitness c2_nondet(bool unique) {
  NonDetWitness w;
  w.name = unique ? "c2-unique-nondet" : "c2-nondet";
  w.unique = unique;
  w.F1 = [](const Stream& x) { return clamped_value(second(x), 0, 2); };
  // Flags at n when p excludes the advised bit at n; the unique variant also
  // flags any nonzero advice symbol after the first.
  w.F2 = [unique](const Stream& x) {
    auto [p, r] = unpair_stream(x);
    return lazy([p, r, unique](Index n, Fuel& fuel) -> Sym {
      const Sym b = r.at(0, fuel);
      if (!b) return b;
      const Sym e = p.at(n, fuel);
      if (!e) return e;
      if (*e == std::min<Nat>(*b, 1) + 1) return Sym(1);
      if (unique && n > 0) {
        const Sym rn = r.at(n, fuel);
        if (!rn) return rn;
        if (*rn != 0) return Sym(1);
      }
      return Sym(0);
    });
  };
  w.advice.name = "2^N";
  w.advice.sample = [](std::uint64_t seed) { return seeded(seed, 2); };
  return w;
}

LibraryEntry reduction_entry(std::string name, std::string summary, ReductionWitness w, Solver g, Suite suite,
                             std::size_t seeds, std::size_t depth) {
  LibraryEntry e;
  e.name = name;
  e.summary = std::move(summary);
  w.name = std::move(name);
  e.reduction = std::make_shared<const ReductionWitness>(std::move(w));
  e.g = std::move(g);
  e.suite = std::move(suite);
  e.default_seeds = seeds;
  e.default_depth = depth;
  return e;
}

LibraryEntry nondet_entry(std::string name, std::string summary, NonDetWitness w, Suite suite, std::size_t seeds,
                          std::size_t depth) {
  LibraryEntry e;
  e.name = name;
  e.summary = std::move(summary);
  w.name = std::move(name);
  e.nondet = std::make_shared<const NonDetWitness>(std::move(w));
  e.suite = std::move(suite);
  e.default_seeds = seeds;
  e.default_depth = depth;
  return e;
}

ReductionWitness c2_cn_witness() {
  ReductionWitness w;
  w.K = c2_as_cn;
  w.H = [](const Stream& pr) { return second(pr); };
  w.translate = [](const Instance& f, const Stream&) {
    Instance g;
    g.problem = "cn";
    g.seed = f.seed;
    g.witness.value = f.witness.value;
    return g;
  };
  return w;
}

CheckReport limsim_report(std::span<const std::uint64_t> seeds, std::size_t depth) {
  CheckReport report;
  report.witness = "limN-loop-sim";
  constexpr std::size_t kLevels = 4;
  constexpr std::size_t kStages = 64;
  for (std::uint64_t seed : sorted(seeds)) {
    const LimLoop ll = limN_loop(seed, kLevels);
    const LimSim sim = limN_infty_via_lim(*ll.loop, kLevels, kStages);
    Fuel fuel(kCaseBudget);
    const RunCheck rc = check_run(
        *ll.loop, [&](std::size_t i) { return sim.run.at(i).prefix(depth, fuel); }, kLevels, depth);
    Verdict v = rc.verdict;
    if (sim.restarts > ll.changes.size()) v = Verdict::refuted;
    if (!sim.stabilized) v = worst(v, Verdict::undetermined);
    CheckRecord rec{seed, depth, v,
                    "restarts " + std::to_string(sim.restarts) + " changes " + std::to_string(ll.changes.size())};
    if (!sim.stabilized) rec.detail += " not-stabilized";
    ++report.applicable;
    report.fuel += fuel.used();
    report.records.push_back(std::move(rec));
  }
  return report;
}

struct Library {
  std::vector<LibraryEntry> entries;

  Library() {
    const Problem& c2 = problem("c2");
    const Problem& c2u = problem("c2-unique");

    entries.push_back(reduction_entry("llpo-id", "LLPO <= LLPO, identity witness",
                                      ReductionWitness{{}, identity_fn(), identity_fn(), true, {}},
                                      oracle_solver(c2), problem_suite(c2), 500, 32));

    entries.push_back(reduction_entry("c2-cn", "C_2 <= C_N, embedding of the exclusions", c2_cn_witness(),
                                      oracle_solver(problem("cn")), problem_suite(c2), 500, 32));

    {
      const Problem& lpo = problem("lpo");
      ReductionWitness w{{}, identity_fn(), [](const Stream&) { return encode_value(1); }, true, {}};
      LibraryEntry e = reduction_entry("broken-lpo", "negative control: LPO answered 'all zero' always", w,
                                       oracle_solver(lpo), {}, 500, 32);
      const Suite base = problem_suite(lpo);
      e.suite = [base, &lpo](std::uint64_t seed) {
        Case c = base(seed);
        const auto inst = make_instance(lpo, seed);
        c.applicable = [inst](std::size_t d) { return inst->witness.first_nonzero && *inst->witness.first_nonzero < d; };
        return c;
      };
      e.negative_control = true;
      entries.push_back(std::move(e));
    }

    entries.push_back(nondet_entry("c2-nondet", "C_2 <= C_{2^N} with the chosen bit as advice", c2_nondet(false),
                                   problem_suite(c2), 500, 32));
    entries.push_back(nondet_entry("c2-unique-nondet", "unique C_2 with singleton helpful advice", c2_nondet(true),
                                   problem_suite(c2u), 500, 32));

    {
      NonDetWitness w = c2_nondet(false);
      w.F1 = [](const Stream&) { return encode_value(0); };
      LibraryEntry e = nondet_entry("broken-c2-nondet", "negative control: C_2 answered 0 always", w, {}, 500, 32);
      const Suite base = problem_suite(c2);
      e.suite = [base, &c2](std::uint64_t seed) {
        Case c = base(seed);
        const auto inst = make_instance(c2, seed);
        c.applicable = [inst](std::size_t d) {
          const Word pub = inst->public_name.prefix(d, kCaseBudget);
          return std::find(pub.begin(), pub.end(), Nat{1}) != pub.end();
        };
        return c;
      };
      e.negative_control = true;
      entries.push_back(std::move(e));
    }

    entries.push_back(nondet_entry("c2-loop-lift", "C_2^inf <= C_{2^N}: lifted advice witness on C_2 loops",
                                   nondet_lift_inverse_limit(c2_nondet(false)), loop_suite(c2, kLoopSteps), 200,
                                   32));
    entries.push_back(nondet_entry("c2-loop-lift-unique", "unique variant of c2-loop-lift",
                                   nondet_lift_inverse_limit(c2_nondet(true)), loop_suite(c2u, kLoopSteps), 200,
                                   32));

    {
      const ReductionWitness base = c2_cn_witness();
      const LiftedReduction lift = lift_reduction_to_inverse_limit(translating(base), base.H);
      entries.push_back(reduction_entry("c2-cn-loop-lift", "C_2^inf <= C_N^inf, lifted embedding",
                                        ReductionWitness{{}, lift.K, lift.H, true, {}},
                                        inverse_limit(oracle_solver(problem("cn"))), loop_suite(c2, kLoopSteps),
                                        50, 32));
    }

    {
      ReductionWitness w;
      w.K = [](const Stream& p) {
        return tuple_countable([p](Index n) { return clamped_value(p, n, kLimValues); });
      };
      w.H = identity_fn();
      w.strong = true;
      w.translate = [](const Instance& f, const Stream&) {
        Instance g;
        g.problem = "lim";
        g.seed = f.seed;
        g.commits = {{0, f.witness.value, f.stage_of(0)}};
        g.witness.prefix = {f.witness.value};
        return g;
      };
      entries.push_back(reduction_entry("limN-lim", "lim_N <= lim, guesses as constant stages", std::move(w),
                                        oracle_solver(problem("lim")), problem_suite(problem("limN")), 500, 32));
    }

    {
      ReductionWitness w;
      w.K = parallel_c2_tree;
      w.H = [](const Stream& path) {
        return tuple_countable([path](Index i) { return clamped_value(path, i, 2); });
      };
      w.strong = true;
      w.translate = [](const Instance& f, const Stream&) {
        Instance g;
        g.problem = "wkl";
        g.seed = f.seed;
        g.witness.prefix = f.witness.prefix;
        g.witness.cycle = f.witness.cycle;
        return g;
      };
      entries.push_back(reduction_entry("llpo-hat-cantor", "parallel LLPO <= C_{2^N}, exclusions as a tree",
                                        std::move(w), oracle_solver(problem("wkl")), parallel_c2_suite(), 100, 32));
    }

    {
      LibraryEntry e;
      e.name = "limN-loop-sim";
      e.summary = "lim_N^inf via lim: guess-and-restart simulation on lim_N loops";
      e.custom = limsim_report;
      entries.push_back(std::move(e));
    }
  }
};

const Library& library() {
  static const Library lib;
  return lib;
}

}  // namespace

const LibraryEntry* find_witness(std::string_view name) {
  for (const LibraryEntry& e : library().entries)
    if (e.name == name) return &e;
  return nullptr;
}

std::vector<std::string> witness_names() {
  std::vector<std::string> names;
  for (const LibraryEntry& e : library().entries) names.push_back(e.name);
  return names;
}

CheckReport run_witness(const LibraryEntry& e, const CheckOptions& opts) {
  const std::size_t n = opts.seeds ? opts.seeds : e.default_seeds;
  const std::size_t depth = opts.depth ? opts.depth : e.default_depth;
  std::vector<std::uint64_t> seeds(n);
  for (std::size_t i = 0; i < n; ++i) seeds[i] = opts.first_seed + i;
  if (e.custom) return e.custom(seeds, depth);
  if (e.reduction) return check_reduction(e.suite, e.g, *e.reduction, seeds, depth);
  return check_nondet(*e.nondet, e.suite, seeds, depth);
}

}  // namespace baire
