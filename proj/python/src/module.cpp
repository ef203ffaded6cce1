#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "baire/reductions.hpp"
#include "baire/transform.hpp"

namespace py = pybind11;
using namespace baire;

namespace {

Stream input_stream(const Word& prefix, const std::optional<Word>& cycle) {
  return cycle ? from_prefix(prefix, *cycle) : from_prefix(prefix);
}

// Determined symbols, with None where the first undetermined index sits.
std::vector<std::optional<Nat>> symbols(const Stream& s, std::size_t depth, std::uint64_t budget) {
  std::vector<std::optional<Nat>> out;
  for (Index i = 0; i < depth; ++i) {
    const auto x = s.at(i, budget);
    out.push_back(x);
    if (!x) break;
  }
  return out;
}

py::dict report_dict(const CheckReport& r) {
  py::list records;
  for (const CheckRecord& rec : r.records)
    records.append(py::make_tuple(rec.seed, rec.depth, std::string(to_string(rec.verdict)), rec.detail));
  py::dict d;
  d["witness"] = r.witness;
  d["records"] = records;
  d["consistent"] = r.count(Verdict::consistent);
  d["undetermined"] = r.count(Verdict::undetermined);
  d["refuted"] = r.count(Verdict::refuted);
  d["applicable"] = r.applicable;
  d["fuel"] = r.fuel;
  d["text"] = r.format();
  return d;
}

}  // namespace

PYBIND11_MODULE(_baire, m) {
  m.doc() = "Bindings for the baire stream and machine library";

  m.def(
      "evaluate",
      [](const std::string& machine_text, const Word& input, std::optional<Word> cycle, std::size_t depth,
         std::uint64_t budget) {
        const Machine mach = table_machine(parse_machine_text(machine_text));
        return symbols(mach->apply(input_stream(input, cycle)), depth, budget);
      },
      py::arg("machine_text"), py::arg("input"), py::arg("cycle") = py::none(), py::arg("depth") = 32,
      py::arg("budget") = 1'000'000);

  m.def("eval_name", [](const Word& name, const Word& input) { return eval_name(name, input); }, py::arg("name"),
        py::arg("input"));
  m.def(
      "decode_entries",
      [](const Word& name) {
        std::vector<std::pair<Word, Word>> out;
        for (const GraphEntry& e : decode_entries(name)) out.emplace_back(e.input, e.output);
        return out;
      },
      py::arg("name"));
  m.def(
      "encode_machine",
      [](const std::string& machine_text, std::size_t length) {
        return encode_machine(table_machine(parse_machine_text(machine_text))).prefix(length, 10'000'000);
      },
      py::arg("machine_text"), py::arg("length") = 64);

  m.def(
      "quine_output",
      [](const Word& p, std::optional<Word> cycle, std::size_t depth) {
        const Name q = quine();
        const Stream ps = input_stream(p, cycle);
        return py::make_tuple(symbols(eval_stream(q, ps), depth, 1'000'000),
                              symbols(pair_stream(q, ps), depth, 1'000'000));
      },
      py::arg("input"), py::arg("cycle") = py::none(), py::arg("depth") = 128);
  m.def(
      "inject_extract",
      [](const Word& p, std::size_t depth) {
        const Injection inj = injection_I();
        return symbols(inj.L(eval_stream(inj.I(samples::returns_identity()), from_prefix(p))), depth, 1'000'000);
      },
      py::arg("input"), py::arg("depth") = 8);
  m.def("extract_blocks", [](const Word& x, std::size_t depth) { return symbols(extract_blocks(finite(x)), depth, 1'000'000); },
        py::arg("symbols"), py::arg("depth") = 8);

  m.def("witnesses", &witness_names);
  m.def(
      "check",
      [](const std::string& witness, std::size_t seeds, std::size_t depth, std::uint64_t first_seed) {
        const LibraryEntry* e = find_witness(witness);
        if (!e) throw py::key_error("unknown witness " + witness);
        py::gil_scoped_release release;
        CheckReport r = run_witness(*e, {seeds, first_seed, depth});
        py::gil_scoped_acquire acquire;
        return report_dict(r);
      },
      py::arg("witness"), py::arg("seeds") = 0, py::arg("depth") = 0, py::arg("first_seed") = 0);

  m.def(
      "diamond",
      [](const std::string& loop_text, std::size_t max_steps, std::size_t depth) {
        const auto loop = make_loop(parse_loop_spec(loop_text));
        const DiamondResult r =
            diamond(oracle_solver(loop->step()), loop->initial(), max_steps, depth, 1'000'000);
        py::dict d;
        d["result"] = format_run_class(r.result);
        std::vector<std::string> trace;
        for (const TraceRecord& t : r.trace) trace.push_back(format_trace(t));
        d["trace"] = trace;
        d["output"] = r.output ? py::cast(r.output->prefix(depth, 1'000'000)) : py::none();
        return d;
      },
      py::arg("loop_text"), py::arg("max_steps") = 8, py::arg("depth") = 32);
  m.def(
      "limsim",
      [](const std::string& loop_text, std::size_t stages, std::size_t levels) {
        const LoopSpec spec = parse_loop_spec(loop_text);
        const auto loop = make_loop(spec);
        if (spec.length != Loop::kEndless) levels = spec.length;
        const LimSim sim = limN_infty_via_lim(*loop, levels, stages);
        const RunCheck rc = check_run(
            *loop, [&](std::size_t i) { return sim.run[i].prefix(32, 1'000'000); }, sim.history.size(), 32);
        Verdict v = rc.verdict;
        if (!sim.stabilized) v = worst(v, Verdict::undetermined);
        py::dict d;
        std::vector<std::string> revisions;
        for (const Revision& r : sim.trace) revisions.push_back(format_revision(r));
        d["revisions"] = revisions;
        d["restarts"] = sim.restarts;
        d["stabilized"] = sim.stabilized;
        d["history"] = sim.history;
        d["verdict"] = std::string(to_string(v));
        return d;
      },
      py::arg("loop_text"), py::arg("stages") = 64, py::arg("levels") = 8);

  m.def("problems", &problem_names);
  m.def(
      "instance",
      [](const std::string& name, std::uint64_t seed) { return format_instance(*make_instance(problem(name), seed)); },
      py::arg("problem"), py::arg("seed") = 0);
  m.def(
      "verify",
      [](const std::string& instance_text, const Word& answer, std::size_t depth) {
        const Instance inst = parse_instance(instance_text);
        const Word out = from_prefix(answer).prefix(depth, 1'000'000);
        return std::string(to_string(problem(inst.problem).check(inst, out, depth)));
      },
      py::arg("instance_text"), py::arg("answer"), py::arg("depth") = 32);

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
}
