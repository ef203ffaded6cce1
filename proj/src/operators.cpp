#include "baire/operators.hpp"

#include <mutex>

namespace baire {

Solver counted(Solver g, std::shared_ptr<std::atomic<std::size_t>> calls) {
  return [g = std::move(g), calls = std::move(calls)](const Stream& x) {
    ++*calls;
    return g(x);
  };
}

Stream loop_step(const Solver& g, const Stream& state) {
  auto [q, p] = unpair_stream(state);
  return eval_stream(q, g(p));
}

Solver parallelize(Solver g) {
  return [g = std::move(g)](const Stream& t) {
    return tuple_countable([g, t](Index i) { return g(project(t, i)); });
  };
}

Solver comp_product(Solver f, Solver g) {
  return [f = std::move(f), g = std::move(g)](const Stream& x) {
    auto [q2, p2] = unpair_stream(loop_step(g, x));
    return pair_stream(q2, f(p2));
  };
}

Solver power_n(Solver f, std::size_t n) {
  if (n == 0) return [](const Stream& x) { return x; };
  const Solver one = [f](const Stream& x) {
    auto [q, p] = unpair_stream(x);
    return pair_stream(q, f(p));
  };
  if (n == 1) return one;
  return [one, prev = power_n(f, n - 1)](const Stream& x) { return one(universal(prev(x))); };
}

Solver star(Solver f) {
  return [f = std::move(f)](const Stream& x) {
    return resolve([f, x](Fuel& fuel) -> std::optional<Stream> {
      const Sym n = x.at(0, fuel);
      if (!n) return std::nullopt;
      return power_n(f, *n)(drop(x, 1));
    });
  };
}

Solver omega(Solver f) {
  return [f = std::move(f)](const Stream& p) {
    return tuple_countable([f, p](Index n) { return power_n(f, n)(p); });
  };
}

std::string format_run_class(const RunClass& c) {
  switch (c.kind) {
    case RunKind::successful:
      return "successful(" + std::to_string(c.k) + ")";
    case RunKind::stalled:
      return "stalled(" + std::to_string(c.k) + ")";
    case RunKind::undetermined:
      break;
  }
  return "undetermined(no success through " + std::to_string(c.k) + ")";
}

RunClass classify_heads(std::span<const Sym> heads) {
  for (std::size_t i = 0; i < heads.size(); ++i) {
    const Sym& h = heads[i];
    if (h.ok()) {
      if (*h == 0) return {RunKind::successful, i};
      continue;
    }
    if (h.miss() == Miss::input) return {RunKind::stalled, i};
    return {RunKind::undetermined, i};
  }
  return {RunKind::undetermined, heads.size()};
}

RunClass classify_run(std::span<const Stream> states, std::uint64_t budget) {
  std::vector<Sym> heads;
  for (const Stream& s : states) {
    Fuel fuel(budget);
    heads.push_back(s.at(0, fuel));
    if (!heads.back().ok() || *heads.back() == 0) break;
  }
  return classify_heads(heads);
}

std::string format_trace(const TraceRecord& r) {
  return "step " + std::to_string(r.step) + " head " + (r.head ? std::to_string(*r.head) : std::string("?")) +
         " determined " + std::to_string(r.determined) + " calls " + std::to_string(r.calls);
}

DiamondResult diamond(const Solver& g, const Stream& q0, std::size_t max_steps, std::size_t depth,
                      std::uint64_t budget) {
  auto calls = std::make_shared<std::atomic<std::size_t>>(0);
  const Solver step = counted(g, calls);
  DiamondResult r;
  r.states.push_back(q0);
  std::vector<Sym> heads;
  for (std::size_t i = 0;; ++i) {
    const Stream& q = r.states[i];
    Fuel fuel(budget);
    const Sym h = q.at(0, fuel);
    heads.push_back(h);
    TraceRecord rec{i, h.ok() ? std::optional<Nat>(*h) : std::nullopt, q.prefix(depth, budget).size(), calls->load()};
    r.trace.push_back(rec);
    if (!h.ok() || *h == 0 || i == max_steps) break;
    r.states.push_back(loop_step(step, q));
  }
  r.result = classify_heads(heads);
  if (r.result.kind == RunKind::successful) r.output = r.states[r.result.k];
  return r;
}

namespace {

class RunCache {
 public:
  RunCache(Solver g, Stream q0) : g_(std::move(g)), states_{std::move(q0)} {}

  Stream state(Index i) const {
    std::lock_guard lock(mu_);
    while (states_.size() <= i) states_.push_back(loop_step(g_, states_.back()));
    return states_[i];
  }

 private:
  Solver g_;
  mutable std::recursive_mutex mu_;
  mutable std::vector<Stream> states_;
};

Stream first_symbol_then(const Stream& s, std::function<std::optional<Stream>(Nat, Fuel&)> next) {
  return resolve([s, next = std::move(next)](Fuel& fuel) -> std::optional<Stream> {
    const Sym v = s.at(0, fuel);
    if (!v) return std::nullopt;
    return next(*v, fuel);
  });
}

}  // namespace

Stream inverse_limit(const Solver& g, const Stream& q0) {
  auto cache = std::make_shared<const RunCache>(g, q0);
  return tuple_countable([cache](Index i) { return cache->state(i); });
}

Solver inverse_limit(Solver g) {
  return [g = std::move(g)](const Stream& q0) { return inverse_limit(g, q0); };
}

LiftedReduction lift_reduction_to_inverse_limit(StreamFn K, StreamFn H) {
  // U_{K_1⟨q,p⟩}(r) = ⟨K_1, K_2⟩∘U_q∘H⟨p,r⟩.
  const InjectiveRecursion rec = injective_recursion_R([K, H](const Name& self, const Stream& xr) {
    auto [x, r] = unpair_stream(xr);
    auto [q, p] = unpair_stream(x);
    const Stream y = eval_stream(q, H(pair_stream(p, r)));
    return pair_stream(eval_stream(self, y), K(second(y)));
  });
  const NameTransformer K1 = rec.R;
  const StreamFn H1 = *K1.extractor();
  LiftedReduction out{
      [K1, K](const Stream& x) { return pair_stream(K1(x), K(second(x))); },
      [H1](const Stream& run) { return tuple_countable([H1, run](Index i) { return H1(first(project(run, i))); }); },
      K1, H1};
  return out;
}

Stream infty_from_omega(const Stream& omega_output) {
  return tuple_countable([omega_output](Index n) {
    const Stream c = project(omega_output, n);
    return n == 0 ? c : universal(c);
  });
}

OmegaViaInfty sv_omega_to_infty() {
  // x = ⟨⟨s,t⟩,q⟩; U_{K(x)}(r) = ⟨K⟨⟨q,r⟩, y_0⟩, y_1⟩ for y = U_q(r).
  const InjectiveRecursion rec = injective_recursion_R([](const Name& self, const Stream& xr) {
    auto [x, r] = unpair_stream(xr);
    const Stream q = second(x);
    auto [y0, y1] = unpair_stream(eval_stream(q, r));
    return pair_stream(eval_stream(self, pair_stream(pair_stream(q, r), y0)), y1);
  });
  const NameTransformer K = rec.R;
  const StreamFn extract = *K.extractor();
  const StreamFn K0 = [K](const Stream& x) {
    auto [q, p] = unpair_stream(x);
    return pair_stream(K(pair_stream(pair_stream(zeros(), zeros()), q)), p);
  };
  const StreamFn H = [extract](const Stream& run) {
    return tuple_countable([extract, run](Index n) {
      const Stream s = project(run, n);
      const Stream x = extract(first(s));
      return n == 0 ? pair_stream(second(x), second(s)) : first(x);
    });
  };
  return {K0, H, K};
}

ParallelViaInfty parallel_infty_to_infty() {
  // x = ⟨k, T⟩ with T the tuple of current loop states; step k = ⟨i,n⟩.
  const InjectiveRecursion rec = injective_recursion_R([](const Name& self, const Stream& xr) {
    auto [x, r] = unpair_stream(xr);
    auto [ks, T] = unpair_stream(x);
    return first_symbol_then(ks, [self, r, T](Nat k, Fuel&) -> std::optional<Stream> {
      const Index i = cantor_unpair(k).first;
      const Stream advanced = eval_stream(first(project(T, i)), r);
      const Stream next = tuple_countable([T, i, advanced](Index j) { return j == i ? advanced : project(T, j); });
      const Index i2 = cantor_unpair(k + 1).first;
      return pair_stream(eval_stream(self, pair_stream(encode_value(k + 1), next)), second(project(next, i2)));
    });
  });
  const NameTransformer R = rec.R;
  const StreamFn extract = *R.extractor();
  return {
      [R](const Stream& T) { return pair_stream(R(pair_stream(encode_value(0), T)), second(project(T, 0))); },
      [extract](const Stream& big) {
        return tuple_countable([extract, big](Index i) {
          return tuple_countable([extract, big, i](Index n) {
            const Stream x = extract(first(project(big, cantor_pair(i, n))));
            return project(second(x), i);
          });
        });
      }};
}

DiamondViaInfty diamond_to_infty(Stream point) {
  // x = ⟨flag, y⟩: flag 0 while y is still running, 1 once y succeeded.
  const InjectiveRecursion rec = injective_recursion_R([point](const Name& self, const Stream& xr) {
    auto [x, r] = unpair_stream(xr);
    auto [flag, y] = unpair_stream(x);
    return first_symbol_then(flag, [self, point, x, y, r](Nat f, Fuel&) -> std::optional<Stream> {
      if (f == 1) return pair_stream(eval_stream(self, x), point);
      const Stream next = eval_stream(first(y), r);
      return first_symbol_then(next, [self, point, next](Nat h, Fuel&) -> std::optional<Stream> {
        if (h == 0) return pair_stream(eval_stream(self, pair_stream(encode_value(1), next)), point);
        return pair_stream(eval_stream(self, pair_stream(encode_value(0), next)), second(next));
      });
    });
  });
  const NameTransformer R = rec.R;
  const StreamFn extract = *R.extractor();
  return {[R, point](const Stream& q0) {
            return first_symbol_then(q0, [R, point, q0](Nat h, Fuel&) -> std::optional<Stream> {
              if (h == 0) return pair_stream(R(pair_stream(encode_value(1), q0)), point);
              return pair_stream(R(pair_stream(encode_value(0), q0)), second(q0));
            });
          },
          [extract](const Stream& big) {
            return defer([extract, big](Fuel& fuel) -> std::optional<Stream> {
              for (Index j = 0;; ++j) {
                const Stream x = extract(first(project(big, j)));
                const Sym flag = x.at(0, fuel);
                if (!flag) return std::nullopt;
                if (*flag == 1) return second(x);
              }
            });
          }};
}

}  // namespace baire
