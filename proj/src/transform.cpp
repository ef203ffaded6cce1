#include "baire/transform.hpp"

#include <algorithm>

namespace baire {

NameTransformer::NameTransformer(std::string label, StreamFn apply, std::optional<StreamFn> extractor)
    : label_(std::move(label)), apply_(std::move(apply)), extractor_(std::move(extractor)) {}

Name NameTransformer::as_name() const { return encode_machine(functional_machine(apply_)); }

namespace {

// F specialized to a fixed first argument q.
class SpecializedMachine final : public WordMachine {
 public:
  SpecializedMachine(Machine f, Stream q) : f_(std::move(f)), q_(std::move(q)) {}

  Word approximate(std::span<const Nat> u, Fuel& fuel) const override {
    const Word q = read_available(q_, fuel, u.size());
    return f_->approximate(interleave(q, u.first(q.size())), fuel);
  }
  Stream apply(const Stream& p) const override { return f_->apply(pair_stream(q_, p)); }

 private:
  Machine f_;
  Stream q_;
};

class InjectionSource final : public StagedSource {
 public:
  InjectionSource(Name s, Stream p) : p_(std::move(p)), inner_(eval_stream(s, p_)) {}

  const Stream& inner() const noexcept { return inner_; }

 protected:
  Step advance(std::size_t stage, Fuel& fuel) const override {
    const Sym block = p_.at(stage, fuel);
    if (!block) return block.miss() == Miss::input ? Step::finished : Step::starved;
    Fuel budget(static_cast<std::uint64_t>(stage) * stage);
    Word payload;
    for (;;) {
      const Sym x = inner_.at(next_ + payload.size(), budget);
      if (!x) break;
      payload.push_back(*x);
    }
    if (!fuel.spend(budget.used())) return Step::starved;
    emit(1);
    for (Nat i = 0; i < *block; ++i) emit(0);
    emit(1);
    for (Nat x : payload) emit(x <= 1 ? 2 : x);
    next_ += payload.size();
    return Step::advanced;
  }

 private:
  Stream p_;
  Stream inner_;
  mutable std::size_t next_ = 0;
};

class BlockReader final : public StagedSource {
 public:
  explicit BlockReader(Stream x) : x_(std::move(x)) {}

 protected:
  Step advance(std::size_t stage, Fuel& fuel) const override {
    const Sym s = x_.at(stage, fuel);
    if (!s) return s.miss() == Miss::input ? Step::finished : Step::starved;
    if (*s == 1) {
      if (open_) emit(zeros_);
      open_ = !open_;
      zeros_ = 0;
    } else if (*s == 0 && open_) {
      ++zeros_;
    }
    return Step::advanced;
  }

 private:
  Stream x_;
  mutable bool open_ = false;
  mutable Nat zeros_ = 0;
};

}  // namespace

NameTransformer smn(Machine F) {
  return NameTransformer("smn", [F](const Name& q) {
    return encode_machine(std::make_shared<SpecializedMachine>(F, q));
  });
}

NameTransformer smn(StreamFn F) { return smn(functional_machine(std::move(F))); }

NameTransformer recursion_T() {
  // D(u) names z ↦ U⟨U_u(u), z⟩.
  const NameTransformer D = smn([](const Stream& r) {
    auto [u, z] = unpair_stream(r);
    return bounded([u, z] { return universal(pair_stream(eval_stream(u, u), z)); });
  });
  // V(p) names u ↦ U_p(D(u)).
  const NameTransformer V = smn([D](const Stream& r) {
    auto [p, u] = unpair_stream(r);
    return eval_stream(p, D(u));
  });
  return NameTransformer("T", [D, V](const Name& p) { return D(V(p)); });
}

Stream inject_stream(const Name& s, const Stream& p) {
  auto src = std::make_shared<InjectionSource>(s, p);
  const Stream inner = src->inner();
  src->bind_semantics([inner](const Stream& x) { return eval_stream(inner, x); });
  return Stream(std::move(src));
}

Stream extract_blocks(const Stream& x) { return Stream(std::make_shared<BlockReader>(x)); }

Injection injection_I() {
  NameTransformer inner = smn([](const Stream& r) {
    auto [s, p] = unpair_stream(r);
    return inject_stream(s, p);
  });
  StreamFn L = extract_blocks;
  return {NameTransformer("I", inner.function(), L), L};
}

InjectiveRecursion injective_recursion_R(RecursionFunctional f) {
  const Injection inj = injection_I();
  const NameTransformer T = recursion_T();
  // U_{U_{S(s)}(q)}(p) = f(I(s), ⟨q,p⟩).
  const NameTransformer S0 = smn([f, I = inj.I](const Stream& r) {
    auto [sq, p] = unpair_stream(r);
    auto [s, q] = unpair_stream(sq);
    return f(I(s), pair_stream(q, p));
  });
  const NameTransformer S = smn([S0](const Stream& sq) { return S0(sq); });
  const Name t = S.as_name();
  const Name r_name = inj.I(T(t));
  NameTransformer R("R", [r_name](const Name& q) { return eval_stream(r_name, q); }, inj.L);
  return {std::move(R), r_name};
}

Name quine() {
  const NameTransformer S_id = smn([](const Stream& r) { return r; });
  return recursion_T()(S_id.as_name());
}

namespace samples {

Name compact_name(std::uint64_t seed) {
  const std::uint64_t h = mix_seed(seed, 0xc0);
  switch (h % 3) {
    case 0:
      return constant_name(seeded(h, 20));
    case 1:
      return encode_machine(branch_machine(3, [h](Nat b) { return seeded(mix_seed(h, b), 20); }));
    default: {
      std::vector<GraphEntry> entries;
      for (Nat b = 0; b < 3; ++b) {
        Word out;
        for (std::size_t j = 0; j < 40; ++j) out.push_back(mix_seed(h + b, j) % 20);
        entries.push_back({{b}, std::move(out)});
      }
      return encode_machine(table_machine(std::move(entries)));
    }
  }
}

namespace {

class HashingTransformer final : public WordMachine {
 public:
  HashingTransformer(std::uint64_t family, std::size_t reads, bool dummies)
      : family_(family), reads_(reads), dummies_(dummies) {}

  Word approximate(std::span<const Nat> w, Fuel& fuel) const override {
    if (w.size() < reads_) return {};
    const Name c = choose(w.first(reads_));
    if (!dummies_) return read_available(c, fuel);
    const Word cw = read_available(c, fuel, w.size());
    Word out;
    for (std::size_t j = 0; j < cw.size(); ++j) {
      out.push_back(w[j] % 3);
      out.push_back(cw[j]);
    }
    return out;
  }

  Stream apply(const Stream& x) const override {
    auto self = std::static_pointer_cast<const HashingTransformer>(shared_from_this());
    return resolve([self, x](Fuel& fuel) -> std::optional<Stream> {
      const Word head = x.prefix(self->reads_, fuel);
      if (head.size() < self->reads_) return std::nullopt;
      const Name c = self->choose(head);
      if (!self->dummies_) return c;
      return pair_stream(map_symbols(x, [](Nat v) { return v % 3; }), c);
    });
  }

 private:
  Name choose(std::span<const Nat> head) const {
    std::uint64_t h = family_;
    for (Nat v : head) h = mix_seed(h, v);
    return compact_name(mix_seed(family_, h % 8));
  }

  std::uint64_t family_;
  std::size_t reads_;
  bool dummies_;
};

}  // namespace

Name transformer(std::uint64_t seed) {
  const std::uint64_t h = mix_seed(seed, 0x7f);
  return encode_machine(std::make_shared<HashingTransformer>(h, h % 4, (h >> 8) % 2 == 1));
}

Name constant_transformer(const Name& c) { return encode_machine(constant_machine(c)); }

Name identity_transformer() { return encode_machine(identity_machine()); }

Name returns_identity() { return constant_transformer(encode_machine(identity_machine())); }

}  // namespace samples

}  // namespace baire
