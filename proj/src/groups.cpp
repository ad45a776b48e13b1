#include "cogrowth/groups.hpp"

#include <charconv>
#include <stdexcept>

namespace cogrowth {

// ---------------------------------------------------------------- BS(p,q)

namespace {

// Floor division by a small positive modulus: m = k*d + r with 0 <= r < d.
std::pair<BigInt, std::uint32_t> floor_divmod(const BigInt& m, int d) {
  BigInt k = m / d;
  BigInt r = m - k * d;
  if (r < 0) {
    r += d;
    k -= 1;
  }
  return {std::move(k), r.convert_to<std::uint32_t>()};
}

}  // namespace

BaumslagSolitar::BaumslagSolitar(int p, int q) : p_(p), q_(q), alphabet_(2, "aAtT") {
  if (p < 1 || q < 1) throw std::invalid_argument("BS(p,q) needs p >= 1 and q >= 1");
}

void BaumslagSolitar::apply(Element& x, Symbol s) const {
  switch (s) {
    case 0:
      x.tail += 1;
      return;
    case 1:
      x.tail -= 1;
      return;
    case 2:
    case 3: {
      // t a^p t^-1 = a^q gives  a^{qk} t = t a^{pk}  and  a^{pk} t^-1 = t^-1 a^{qk}.
      const std::int8_t sign = s == 2 ? 1 : -1;
      const int pass = sign > 0 ? q_ : p_;  // power of a that commutes past t^sign
      const int emerge = sign > 0 ? p_ : q_;
      if (!x.syllables.empty() && x.syllables.back().t_sign == -sign) {
        auto [k, r] = floor_divmod(x.tail, pass);
        if (r == 0) {  // pinch: t^-e a^{pass*k} t^e = a^{emerge*k}
          x.tail = BigInt(x.syllables.back().exponent) + k * emerge;
          x.syllables.pop_back();
          return;
        }
        x.syllables.push_back({r, sign});
        x.tail = k * emerge;
        return;
      }
      auto [k, r] = floor_divmod(x.tail, pass);
      x.syllables.push_back({r, sign});
      x.tail = k * emerge;
      return;
    }
    default:
      throw std::out_of_range("BS: symbol index out of range");
  }
}

void BaumslagSolitar::append_key(const Element& x, std::string& out) const {
  put_varint(out, x.syllables.size());
  for (const auto& syl : x.syllables) put_varint(out, (std::uint64_t{syl.exponent} << 1) | (syl.t_sign > 0 ? 1U : 0U));
  if (x.tail >= std::numeric_limits<std::int64_t>::min() && x.tail <= std::numeric_limits<std::int64_t>::max()) {
    out.push_back(0);
    put_zigzag(out, x.tail.convert_to<std::int64_t>());
  } else {
    out.push_back(x.tail < 0 ? 2 : 1);
    std::string bytes;
    const BigInt magnitude = boost::multiprecision::abs(x.tail);
    export_bits(magnitude, std::back_inserter(bytes), 8);
    put_varint(out, bytes.size());
    out += bytes;
  }
}

std::string BaumslagSolitar::debug_string(const Element& x) const {
  std::string out;
  for (const auto& syl : x.syllables) {
    if (syl.exponent != 0) out += "a^" + std::to_string(syl.exponent) + " ";
    out += syl.t_sign > 0 ? "t " : "T ";
  }
  out += "a^" + x.tail.str();
  return out;
}

// ---------------------------------------------------------------- GroupId

GroupId GroupId::parse(std::string_view text) {
  GroupId id;
  if (text == "f2") {
    id.family = Family::Free2;
  } else if (text == "z2") {
    id.family = Family::ZxZ;
  } else if (text == "thompson") {
    id.family = Family::ThompsonF;
  } else if (text == "zwrz") {
    id.family = Family::WreathZZ;
  } else if (text == "zwrf2") {
    id.family = Family::WreathZF2;
  } else if (text == "zwrzwrz") {
    id.family = Family::WreathZZZ;
  } else if (text.starts_with("bs:")) {
    id.family = Family::BS;
    const auto rest = text.substr(3);
    const auto colon = rest.find(':');
    if (colon == std::string_view::npos) throw std::invalid_argument("group: expected bs:P:Q");
    auto parse_int = [](std::string_view s) {
      int v = 0;
      const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc{} || ptr != s.data() + s.size()) throw std::invalid_argument("group: bad BS parameter");
      return v;
    };
    id.p = parse_int(rest.substr(0, colon));
    id.q = parse_int(rest.substr(colon + 1));
    if (id.p < 1 || id.q < 1) throw std::invalid_argument("group: BS(p,q) needs p,q >= 1");
  } else {
    throw std::invalid_argument("group: unknown group '" + std::string(text) + "'");
  }
  return id;
}

std::string GroupId::to_string() const {
  switch (family) {
    case Family::Free2:
      return "f2";
    case Family::ZxZ:
      return "z2";
    case Family::BS:
      return "bs:" + std::to_string(p) + ":" + std::to_string(q);
    case Family::ThompsonF:
      return "thompson";
    case Family::WreathZZ:
      return "zwrz";
    case Family::WreathZF2:
      return "zwrf2";
    case Family::WreathZZZ:
      return "zwrzwrz";
  }
  return "?";
}

// ---------------------------------------------------------------- Group

namespace {

GroupVariant make_impl(const GroupId& id) {
  switch (id.family) {
    case Family::Free2:
      return FreeGroup(Alphabet::standard(2));
    case Family::ZxZ:
      return FreeAbelian2{};
    case Family::BS:
      return BaumslagSolitar(id.p, id.q);
    case Family::ThompsonF:
      return ThompsonF{};
    case Family::WreathZZ:
      return make_wreath_line();
    case Family::WreathZF2:
      return make_wreath_tree();
    case Family::WreathZZZ:
      return make_wreath_nested();
  }
  throw std::invalid_argument("group: unknown family");
}

template <class G>
const typename G::Element& as_element(const GroupElement& x) {
  const auto* e = std::get_if<typename G::Element>(&x);
  if (e == nullptr) throw std::invalid_argument("group: element belongs to a different family");
  return *e;
}

}  // namespace

Group::Group(GroupId id) : id_(id), impl_(make_impl(id)) {}

const Alphabet& Group::alphabet() const {
  return visit([](const auto& g) -> const Alphabet& { return g.alphabet(); });
}

bool Group::has_metric() const noexcept {
  return visit([](const auto& g) { return HasMetric<std::decay_t<decltype(g)>>; });
}

GroupElement identity(const Group& g) {
  return g.visit([](const auto& impl) -> GroupElement { return impl.identity(); });
}

GroupElement apply_gen(const Group& g, GroupElement x, Symbol s) {
  if (s >= g.alphabet().size()) throw std::out_of_range("group: symbol index out of range");
  g.visit([&](const auto& impl) {
    using G = std::decay_t<decltype(impl)>;
    auto* e = std::get_if<typename G::Element>(&x);
    if (e == nullptr) throw std::invalid_argument("group: element belongs to a different family");
    impl.apply(*e, s);
  });
  return x;
}

GroupElement evaluate(const Group& g, const Word& w) {
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] >= g.alphabet().size()) throw std::out_of_range("group: word uses letters outside the alphabet");
  return g.visit([&](const auto& impl) -> GroupElement { return evaluate_word(impl, w); });
}

CanonicalKey canonical_key(const Group& g, const GroupElement& x) {
  return g.visit([&](const auto& impl) {
    using G = std::decay_t<decltype(impl)>;
    return key_of(impl, as_element<G>(x));
  });
}

std::string debug_string(const Group& g, const GroupElement& x) {
  return g.visit([&](const auto& impl) {
    using G = std::decay_t<decltype(impl)>;
    return impl.debug_string(as_element<G>(x));
  });
}

std::size_t geodesic_length(const Group& g, const GroupElement& x) {
  return g.visit([&](const auto& impl) -> std::size_t {
    using G = std::decay_t<decltype(impl)>;
    if constexpr (HasMetric<G>) {
      return impl.geodesic_length(as_element<G>(x));
    } else {
      throw MetricUnavailable("no geodesic metric implemented for " + g.id().to_string());
    }
  });
}

}  // namespace cogrowth
