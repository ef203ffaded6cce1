#pragma once

#include <optional>
#include <string>

#include "baire/machine.hpp"

namespace baire {

// A total computable map on names, optionally with a left inverse of the
// functions it names (extractor(U_{apply(x)}(p)) = p for injections).
class NameTransformer {
 public:
  NameTransformer(std::string label, StreamFn apply, std::optional<StreamFn> extractor = std::nullopt);

  Name operator()(const Name& x) const { return apply_(x); }
  const std::string& label() const noexcept { return label_; }
  bool total() const noexcept { return true; }
  const std::optional<StreamFn>& extractor() const noexcept { return extractor_; }
  const StreamFn& function() const noexcept { return apply_; }

  // A name t with U_t = this transformer.
  Name as_name() const;

 private:
  std::string label_;
  StreamFn apply_;
  std::optional<StreamFn> extractor_;
};

// S with U_{S(q)}(p) = F⟨q,p⟩.
NameTransformer smn(Machine F);
NameTransformer smn(StreamFn F);

// T with U_{T(p)} = U_{U_p(T(p))} whenever U_p is total.
NameTransformer recursion_T();

// I with L∘U_{I(s)} = id and U_{U_{I(s)}(p)} = U_{U_s(p)}.
struct Injection {
  NameTransformer I;
  StreamFn L;
};
Injection injection_I();

// F(s,p): blocks 1 0^{p(i)} 1 interleaved with U_s(p), whose 0s and 1s become 2.
Stream inject_stream(const Name& s, const Stream& p);
// L: lengths of the 1-delimited zero blocks.
Stream extract_blocks(const Stream& x);

// R with U_{R(q)}(p) = f(name of R, ⟨q,p⟩), injective via `extract`.
using RecursionFunctional = std::function<Stream(const Name& r, const Stream& paired)>;
struct InjectiveRecursion {
  NameTransformer R;
  Name r_name;
};
InjectiveRecursion injective_recursion_R(RecursionFunctional f);

// q with U_q(p) = ⟨q,p⟩.
Name quine();

// Seeded sample names and transformers with compact graphs, so their raw
// streams can be decoded to useful depth.
namespace samples {
Name compact_name(std::uint64_t seed);
// U_p(x) = a compact name chosen by hashing the first few symbols of x,
// sometimes with dummy symbols interleaved into its stream.
Name transformer(std::uint64_t seed);
Name constant_transformer(const Name& c);
Name identity_transformer();
// U_s(p) = identity name for every p.
Name returns_identity();
}  // namespace samples

}  // namespace baire
