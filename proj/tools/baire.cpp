#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include "baire/reductions.hpp"

using namespace baire;

namespace {

enum Exit : int { kOk = 0, kRefuted = 1, kUsage = 2, kUndetermined = 3 };

struct Config {
  std::size_t depth = 32;
  double fuel = 1e6;
  std::uint64_t seed = 0;
  std::size_t steps = 8;
  std::size_t seeds = 0;
  bool verify = false;
  bool validate = false;
  bool strict = false;

  std::uint64_t budget() const { return static_cast<std::uint64_t>(fuel); }
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// "<naturals> [zeros | cycle <naturals>]"; the tail defaults to zeros.
Stream parse_input(const std::string& spec) {
  std::istringstream in(spec);
  Word prefix;
  Word cycle{0};
  std::string tok;
  bool in_cycle = false;
  while (in >> tok) {
    if (tok == "zeros") {
      if (in_cycle || (in >> tok)) throw UsageError("'zeros' must end the input");
      break;
    }
    if (tok == "cycle") {
      if (in_cycle) throw UsageError("duplicate 'cycle'");
      in_cycle = true;
      cycle.clear();
      continue;
    }
    Nat v = 0;
    const auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || end != tok.data() + tok.size()) throw UsageError("bad input symbol '" + tok + "'");
    (in_cycle ? cycle : prefix).push_back(v);
  }
  if (cycle.empty()) throw UsageError("empty cycle");
  return from_prefix(std::move(prefix), std::move(cycle));
}

std::string join(std::span<const Nat> w) {
  std::string s;
  for (Nat x : w) {
    if (!s.empty()) s += ' ';
    s += std::to_string(x);
  }
  return s;
}

Machine machine_file(const std::string& path) { return table_machine(parse_machine_text(read_file(path))); }

// Prints the determined prefix, then why the first missing index is missing.
int dump(std::ostream& out, const std::string& label, const Stream& s, const Config& cfg) {
  Word w;
  std::uint64_t used = 0;
  std::optional<std::pair<Index, Miss>> missing;
  for (Index i = 0; i < cfg.depth; ++i) {
    Fuel fuel(cfg.budget());
    const Sym x = s.at(i, fuel);
    used += fuel.used();
    if (!x) {
      missing.emplace(i, x.miss());
      break;
    }
    w.push_back(*x);
  }
  out << label << (w.empty() ? "" : " ") << join(w) << '\n';
  out << "fuel " << used << '\n';
  if (missing)
    out << "index " << missing->first << " undetermined " << (missing->second == Miss::fuel ? "fuel" : "input")
        << '\n';
  return missing ? kUndetermined : kOk;
}

// Both sides of an equation, index by index.
int compare(std::ostream& out, const Stream& lhs, const Stream& rhs, const Config& cfg) {
  std::size_t agree = 0, disagree = 0, undetermined = 0;
  for (Index i = 0; i < cfg.depth; ++i) {
    Fuel fl(cfg.budget());
    Fuel fr(cfg.budget());
    const Sym a = lhs.at(i, fl);
    const Sym b = rhs.at(i, fr);
    const char* v = !a || !b ? "undetermined" : *a == *b ? "agree" : "disagree";
    (!a || !b ? undetermined : *a == *b ? agree : disagree)++;
    out << "index " << i << ' ' << v << '\n';
  }
  out << "verify agree " << agree << " disagree " << disagree << " undetermined " << undetermined << '\n';
  if (disagree) return kRefuted;
  return undetermined ? kUndetermined : kOk;
}

int finish(int code, const Config& cfg) { return code == kUndetermined && !cfg.strict ? kOk : code; }

int cmd_eval(const std::string& file, const std::string& input, const Config& cfg) {
  const Name name = encode_machine(machine_file(file));
  return finish(dump(std::cout, "output", eval_stream(name, parse_input(input)), cfg), cfg);
}

Name transformer_arg(const std::string& file, const std::string& sample) {
  if (!file.empty()) return encode_machine(machine_file(file));
  if (sample == "identity") return samples::identity_transformer();
  if (sample == "constant") return samples::constant_transformer(samples::compact_name(0));
  if (sample.rfind("seed:", 0) == 0) return samples::transformer(std::stoull(sample.substr(5)));
  throw UsageError("need a transformer file or --sample identity|constant|seed:N");
}

int cmd_transform(const std::string& kind, const std::string& file, const std::string& sample,
                  const std::string& q_spec, const std::string& input, const std::string& functional,
                  const Config& cfg) {
  const Stream p = parse_input(input);
  int code = kOk;
  auto show = [&](const std::string& label, const Stream& s) { code = std::max(code, dump(std::cout, label, s, cfg)); };
  auto verify = [&](const Stream& lhs, const Stream& rhs) {
    if (cfg.verify) code = std::max(code, compare(std::cout, lhs, rhs, cfg));
  };

  if (kind == "smn") {
    if (file.empty()) throw UsageError("smn needs a machine file");
    const Machine F = machine_file(file);
    const Stream q = parse_input(q_spec);
    const Name s = smn(F)(q);
    show("name", s);
    verify(eval_stream(s, p), F->apply(pair_stream(q, p)));
  } else if (kind == "fix") {
    const Name t = transformer_arg(file, sample);
    const Name fixed = recursion_T()(t);
    show("name", fixed);
    verify(eval_stream(fixed, p), eval_stream(eval_stream(t, fixed), p));
  } else if (kind == "inject") {
    if (file.empty()) throw UsageError("inject needs a machine file");
    const Name s = encode_machine(machine_file(file));
    const Stream injected = eval_stream(injection_I().I(s), p);
    show("output", injected);
    verify(extract_blocks(injected), p);
  } else if (kind == "extract") {
    show("output", extract_blocks(p));
  } else if (kind == "injrec") {
    RecursionFunctional f;
    if (functional == "project") {
      f = [](const Name&, const Stream& qp) { return second(qp); };
    } else if (functional == "self-pair") {
      f = [](const Name& r, const Stream& qp) {
        auto [q1, p1] = unpair_stream(qp);
        return pair_stream(eval_stream(r, q1), p1);
      };
    } else {
      throw UsageError("--functional must be project or self-pair");
    }
    const InjectiveRecursion rec = injective_recursion_R(f);
    const Stream q = parse_input(q_spec);
    const Name rq = rec.R(q);
    show("name", rq);
    verify(eval_stream(rq, p), f(rec.r_name, pair_stream(q, p)));
    if (cfg.verify) {
      std::cout << "extractor\n";
      code = std::max(code, compare(std::cout, (*rec.R.extractor())(rq), q, cfg));
    }
  } else if (kind == "quine") {
    const Name q = quine();
    show("name", q);
    verify(eval_stream(q, p), pair_stream(q, p));
  } else {
    throw UsageError("unknown transform '" + kind + "'");
  }
  return finish(code, cfg);
}

std::string head_text(const Stream& s, const Config& cfg) { return join(s.prefix(cfg.depth, cfg.budget())); }

int validate_run(const Loop& loop, const std::function<Word(std::size_t)>& observed, std::size_t steps,
                 const Config& cfg) {
  Verdict overall = Verdict::consistent;
  for (std::size_t k = 1; k <= steps; ++k) {
    const RunCheck rc = check_run(loop, observed, k, cfg.depth);
    std::cout << "validate step " << k << " verdict " << to_string(rc.verdict) << '\n';
    overall = worst(overall, rc.verdict);
    if (rc.verdict != Verdict::consistent) break;
  }
  if (overall == Verdict::refuted) return kRefuted;
  return overall == Verdict::undetermined ? kUndetermined : kOk;
}

int cmd_loop(const std::string& op, const std::string& file, std::size_t n, const Config& cfg) {
  const auto loop = make_loop(parse_loop_spec(read_file(file)));
  const Solver g = oracle_solver(loop->step());
  const Stream q0 = loop->initial();
  int code = kOk;
  auto calls = std::make_shared<std::atomic<std::size_t>>(0);
  const Solver counted_g = counted(g, calls);

  if (op == "power" || op == "star") {
    const Stream in = op == "power" ? q0 : cons(n, q0);
    const Stream out = op == "power" ? power_n(counted_g, n)(in) : star(counted_g)(in);
    std::cout << "input " << head_text(in, cfg) << '\n';
    std::cout << "output " << head_text(out, cfg) << '\n';
    std::cout << "calls " << calls->load() << '\n';
  } else if (op == "omega") {
    const Stream out = omega(counted_g)(q0);
    for (Index i = 0; i <= cfg.steps; ++i) std::cout << "component " << i << ' ' << head_text(project(out, i), cfg) << '\n';
  } else if (op == "diamond") {
    const DiamondResult r = diamond(g, q0, cfg.steps, cfg.depth, cfg.budget());
    for (const TraceRecord& t : r.trace) std::cout << format_trace(t) << '\n';
    std::cout << "result " << format_run_class(r.result) << '\n';
    if (r.output) std::cout << "output " << head_text(*r.output, cfg) << '\n';
    if (r.result.kind == RunKind::stalled) code = kUndetermined;
    if (r.result.kind == RunKind::undetermined) code = kUndetermined;
    if (cfg.validate && r.result.kind == RunKind::successful && r.result.k > 0)
      code = std::max(code, validate_run(
                                *loop, [&](std::size_t i) { return r.states[i].prefix(cfg.depth, cfg.budget()); },
                                r.result.k, cfg));
  } else if (op == "infty") {
    const Stream run = inverse_limit(counted_g, q0);
    for (Index i = 0; i <= cfg.steps; ++i) {
      const Stream s = project(run, i);
      Fuel fuel(cfg.budget());
      const Sym h = s.at(0, fuel);
      const TraceRecord t{i, h.ok() ? std::optional<Nat>(*h) : std::nullopt, s.prefix(cfg.depth, cfg.budget()).size(),
                          calls->load()};
      std::cout << format_trace(t) << '\n';
    }
    if (cfg.validate)
      code = validate_run(
          *loop, [&](std::size_t i) { return project(run, i).prefix(cfg.depth, cfg.budget()); }, cfg.steps, cfg);
  } else {
    throw UsageError("unknown loop operator '" + op + "'");
  }
  return finish(code, cfg);
}

int cmd_check(const std::string& name, bool list, const Config& cfg) {
  if (list) {
    for (const auto& n : witness_names()) std::cout << n << "  " << find_witness(n)->summary << '\n';
    return kOk;
  }
  const LibraryEntry* e = find_witness(name);
  if (!e) {
    std::cerr << "unknown witness '" << name << "' (see check --list)\n";
    return kUsage;
  }
  const CheckReport r = run_witness(*e, {cfg.seeds, cfg.seed, cfg.depth});
  std::cout << r.format();
  if (r.count(Verdict::refuted)) return kRefuted;
  return r.count(Verdict::undetermined) && cfg.strict ? kUndetermined : kOk;
}

int cmd_limsim(const std::string& file, std::size_t stages, const Config& cfg) {
  const LoopSpec spec = parse_loop_spec(read_file(file));
  if (problem(spec.problem).name != "limN") throw UsageError("limsim needs a limN loop");
  const auto loop = make_loop(spec);
  const std::size_t levels = spec.length == Loop::kEndless ? cfg.steps : spec.length;
  const LimSim sim = limN_infty_via_lim(*loop, levels, stages);
  for (const Revision& r : sim.trace) std::cout << format_revision(r) << '\n';
  std::cout << "restarts " << sim.restarts << " stages " << sim.stages << (sim.stabilized ? " stabilized" : " unstable")
            << '\n';
  for (std::size_t i = 0; i < sim.run.size(); ++i) std::cout << "run " << i << ' ' << head_text(sim.run[i], cfg) << '\n';
  const RunCheck rc = check_run(
      *loop, [&](std::size_t i) { return sim.run[i].prefix(cfg.depth, cfg.budget()); }, sim.history.size(), cfg.depth);
  Verdict v = rc.verdict;
  if (!sim.stabilized) v = worst(v, Verdict::undetermined);
  std::cout << "verdict " << to_string(v) << '\n';
  if (v == Verdict::refuted) return kRefuted;
  return finish(v == Verdict::undetermined ? kUndetermined : kOk, cfg);
}

int cmd_gen(const std::string& what, const std::string& name, std::size_t length, const Config& cfg) {
  if (what == "instance") {
    std::cout << format_instance(*make_instance(problem(name), cfg.seed));
  } else if (what == "loop") {
    LoopSpec spec{std::string(problem(name).name), cfg.seed, length, std::nullopt};
    if (spec.problem == "limN") spec.changes = limN_loop(cfg.seed, length).changes;
    std::cout << format_loop_spec(spec);
  } else {
    throw UsageError("gen makes 'instance' or 'loop'");
  }
  return kOk;
}

int cmd_verify(const std::string& file, const std::string& answer, const Config& cfg) {
  const Instance inst = parse_instance(read_file(file));
  const Word out = parse_input(answer).prefix(cfg.depth, cfg.budget());
  const Verdict v = problem(inst.problem).check(inst, out, cfg.depth);
  std::cout << "verdict " << to_string(v) << '\n';
  if (v == Verdict::refuted) return kRefuted;
  return finish(v == Verdict::undetermined ? kUndetermined : kOk, cfg);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Baire-space names, transformations, loop operators and reduction checks"};
  app.require_subcommand(1);
  Config cfg;
  auto common = [&cfg](CLI::App* c) {
    c->add_option("--depth", cfg.depth, "output indices to determine")->capture_default_str();
    c->add_option("--fuel", cfg.fuel, "fuel ceiling per query")->check(CLI::NonNegativeNumber)->capture_default_str();
    c->add_option("--seed", cfg.seed, "seed")->capture_default_str();
    c->add_option("--steps", cfg.steps, "loop steps")->capture_default_str();
    c->add_flag("--strict", cfg.strict, "exit 3 when only undetermined outcomes remain");
  };

  std::string file, input, q_spec, sample, functional = "project", kind, op, witness, what, name, answer;
  std::size_t n = 1, stages = 64, length = Loop::kEndless;
  bool list = false;

  auto* eval = app.add_subcommand("eval", "evaluate a machine file on an input");
  eval->add_option("machine", file, "machine file")->required();
  eval->add_option("--input", input, "input: naturals, then 'zeros' or 'cycle <naturals>'");
  common(eval);

  auto* transform = app.add_subcommand("transform", "smn, fix, inject, extract, injrec, quine");
  transform->add_option("kind", kind)->required()->check(CLI::IsMember({"smn", "fix", "inject", "extract", "injrec", "quine"}));
  transform->add_option("file", file, "machine file");
  transform->add_option("--q", q_spec, "fixed first argument");
  transform->add_option("--input", input, "input stream");
  transform->add_option("--sample", sample, "builtin transformer: identity, constant, seed:N");
  transform->add_option("--functional", functional, "injrec functional: project, self-pair")->capture_default_str();
  transform->add_flag("--verify", cfg.verify, "evaluate both sides of the defining equation");
  common(transform);

  auto* loop = app.add_subcommand("loop", "power, star, omega, diamond, infty on a loop file");
  loop->add_option("op", op)->required()->check(CLI::IsMember({"power", "star", "omega", "diamond", "infty"}));
  loop->add_option("loop-file", file)->required();
  loop->add_option("--n", n, "exponent for power and star")->capture_default_str();
  loop->add_flag("--validate", cfg.validate, "check each step against the step problem");
  common(loop);

  auto* check = app.add_subcommand("check", "run a shipped reduction witness against its instance suite");
  check->add_option("witness", witness);
  check->add_flag("--list", list, "list witnesses");
  check->add_option("--seeds", cfg.seeds, "number of seeds (default: the witness's)");
  common(check);
  cfg.depth = 0;  // check: 0 means the witness's default

  auto* limsim = app.add_subcommand("limsim", "simulate a lim_N loop by guess and restart");
  limsim->add_option("loop-file", file)->required();
  limsim->add_option("--stages", stages, "simulation stages")->capture_default_str();
  common(limsim);

  auto* gen = app.add_subcommand("gen", "print a seeded instance file or loop file");
  gen->add_option("what", what)->required()->check(CLI::IsMember({"instance", "loop"}));
  gen->add_option("problem", name)->required();
  gen->add_option("--length", length, "loop length");
  common(gen);

  auto* verify = app.add_subcommand("verify", "check a candidate answer against an instance file");
  verify->add_option("instance-file", file)->required();
  verify->add_option("--answer", answer, "answer stream")->required();
  common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  if (!check->parsed() && cfg.depth == 0) cfg.depth = 32;

  try {
    if (eval->parsed()) return cmd_eval(file, input, cfg);
    if (transform->parsed()) return cmd_transform(kind, file, sample, q_spec, input, functional, cfg);
    if (loop->parsed()) return cmd_loop(op, file, n, cfg);
    if (check->parsed()) {
      if (witness.empty() && !list) throw UsageError("check needs a witness name or --list");
      return cmd_check(witness, list, cfg);
    }
    if (limsim->parsed()) return cmd_limsim(file, stages, cfg);
    if (gen->parsed()) return cmd_gen(what, name, length, cfg);
    if (verify->parsed()) return cmd_verify(file, answer, cfg);
  } catch (const ParseError& e) {
    std::cerr << "error: " << file << ": " << e.what() << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
