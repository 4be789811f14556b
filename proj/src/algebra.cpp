#include "couniv/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>

#include "couniv/cycles.hpp"
#include "couniv/error.hpp"

namespace couniv {

AlgebraElement AlgebraElement::monomial(Path alpha, Path beta, Scalar c) {
  if (alpha.source() != beta.source()) {
    throw ValidationError("monomial keys need s(alpha) = s(beta)");
  }
  AlgebraElement a;
  a.add({std::move(alpha), std::move(beta)}, c);
  return a;
}

std::size_t AlgebraElement::max_key_length() const {
  std::size_t n = 0;
  for (const auto& [key, c] : terms_) {
    n = std::max({n, key.alpha.size(), key.beta.size()});
  }
  return n;
}

void AlgebraElement::add(const MonomialKey& key, const Scalar& c) {
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    if (!c.is_zero()) terms_.emplace(key, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
  AlgebraElement out = *this;
  out += o;
  return out;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  for (const auto& [key, c] : o.terms_) add(key, c);
  return *this;
}

AlgebraElement AlgebraElement::operator-() const { return scaled(-1); }

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
  return *this + (-o);
}

AlgebraElement AlgebraElement::scaled(const Scalar& c) const {
  AlgebraElement out;
  for (const auto& [key, d] : terms_) {
    // Scaling by an inexact value is an explicit request for inexact mode.
    out.add(key, c.is_exact() ? c * d : c * d.to_inexact());
  }
  return out;
}

AlgebraElement AlgebraElement::to_inexact() const {
  AlgebraElement out;
  for (const auto& [key, c] : terms_) out.terms_.emplace(key, c.to_inexact());
  return out;
}

bool AlgebraElement::is_exact() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const auto& kv) { return kv.second.is_exact(); });
}

AlgebraElement make_vertex(const Graph& g, VertexId v) {
  if (index(v) >= g.vertex_count()) throw ValidationError("unknown vertex");
  return AlgebraElement::monomial(Path::empty(v), Path::empty(v));
}

AlgebraElement make_edge(const Graph& g, EdgeId e) {
  if (index(e) >= g.edge_count()) throw ValidationError("unknown edge");
  return AlgebraElement::monomial(Path::edge(g, e), Path::empty(g.source(e)));
}

AlgebraElement make_path(const Graph& g, const Path& p) {
  (void)g;
  return AlgebraElement::monomial(p, Path::empty(p.source()));
}

AlgebraElement adjoint(const AlgebraElement& a) {
  AlgebraElement out;
  for (const auto& [key, c] : a.terms()) out.add({key.beta, key.alpha}, c.conj());
  return out;
}

AlgebraElement multiply(const Graph& g, const AlgebraElement& a,
                        const AlgebraElement& b) {
  AlgebraElement out;
  for (const auto& [k1, c1] : a.terms()) {
    for (const auto& [k2, c2] : b.terms()) {
      if (k2.alpha.has_prefix(k1.beta)) {
        Path rest = k2.alpha.drop_front(g, k1.beta.size());
        out.add({k1.alpha.concat(rest), k2.beta}, c1 * c2);
      } else if (k1.beta.has_prefix(k2.alpha)) {
        Path rest = k1.beta.drop_front(g, k2.alpha.size());
        out.add({k1.alpha, k2.beta.concat(rest)}, c1 * c2);
      }
    }
  }
  return out;
}

namespace {

// A parsed value: a scalar until a generator is involved.
struct Value {
  bool is_scalar = true;
  Scalar scalar;
  AlgebraElement element;
};

class ElementParser {
 public:
  ElementParser(const Graph& g, std::string_view text) : g_(g), text_(text) {}

  AlgebraElement parse() {
    Value v = sum();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return as_element(v);
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(0, "element at column " + std::to_string(pos_ + 1) + ": " +
                            what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  AlgebraElement unit() const {
    AlgebraElement one;
    for (VertexId v : g_.vertices()) one += make_vertex(g_, v);
    return one;
  }

  AlgebraElement as_element(const Value& v) const {
    if (!v.is_scalar) return v.element;
    if (v.scalar.is_zero() && v.scalar.is_exact()) return {};
    // A bare scalar c stands for c times the unit sum of all p_v.
    return unit().scaled(v.scalar);
  }

  static Scalar promote(const Scalar& s, const Scalar& other) {
    return s.is_exact() && !other.is_exact() ? s.to_inexact() : s;
  }

  Value add(const Value& a, const Value& b) const {
    if (a.is_scalar && b.is_scalar) {
      return {true, promote(a.scalar, b.scalar) + promote(b.scalar, a.scalar), {}};
    }
    return {false, {}, as_element(a) + as_element(b)};
  }

  Value mul(const Value& a, const Value& b) const {
    if (a.is_scalar && b.is_scalar) {
      return {true, promote(a.scalar, b.scalar) * promote(b.scalar, a.scalar), {}};
    }
    if (a.is_scalar) return {false, {}, b.element.scaled(a.scalar)};
    if (b.is_scalar) return {false, {}, a.element.scaled(b.scalar)};
    return {false, {}, multiply(g_, a.element, b.element)};
  }

  static Value negate(const Value& v) {
    if (v.is_scalar) return {true, -v.scalar, {}};
    return {false, {}, -v.element};
  }

  Value sum() {
    Value acc;
    bool first = true;
    while (true) {
      bool negative = false;
      if (accept("-")) {
        negative = true;
      } else if (!accept("+") && !first) {
        break;
      }
      Value t = term();
      acc = first ? (negative ? negate(t) : t) : add(acc, negative ? negate(t) : t);
      first = false;
    }
    return acc;
  }

  Value term() {
    Value acc = factor();
    while (true) {
      skip_space();
      // "s*[" begins a factor, so only a lone '*' multiplies.
      if (pos_ < text_.size() && text_[pos_] == '*') {
        ++pos_;
        acc = mul(acc, factor());
      } else {
        return acc;
      }
    }
  }

  std::string bracketed() {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != '[') fail("expected '['");
    auto close = text_.find(']', pos_);
    if (close == std::string_view::npos) fail("missing ']'");
    std::string inner(text_.substr(pos_ + 1, close - pos_ - 1));
    pos_ = close + 1;
    return inner;
  }

  Path path_of(const std::string& inner) {
    std::vector<EdgeId> edges;
    std::size_t i = 0;
    while (i < inner.size()) {
      while (i < inner.size() && std::isspace(static_cast<unsigned char>(inner[i]))) ++i;
      std::size_t j = i;
      while (j < inner.size() && !std::isspace(static_cast<unsigned char>(inner[j]))) ++j;
      if (j > i) {
        auto e = g_.find_edge(inner.substr(i, j - i));
        if (!e) fail("unknown edge '" + inner.substr(i, j - i) + "'");
        edges.push_back(*e);
      }
      i = j;
    }
    if (edges.empty()) fail("empty path; use p[v] for a vertex");
    try {
      return Path::of(g_, std::move(edges));
    } catch (const ValidationError& e) {
      fail(e.what());
    }
  }

  VertexId vertex_of(std::string inner) {
    auto first = inner.find_first_not_of(" \t");
    auto last = inner.find_last_not_of(" \t");
    if (first == std::string::npos) fail("empty vertex");
    inner = inner.substr(first, last - first + 1);
    auto v = g_.find_vertex(inner);
    if (!v) fail("unknown vertex '" + inner + "'");
    return *v;
  }

  Value number() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.' ||
            text_[pos_] == '/')) {
      ++pos_;
    }
    // An exponent only follows a decimal mantissa.
    std::string token(text_.substr(start, pos_ - start));
    if (token.find('.') != std::string::npos && pos_ < text_.size() &&
        (text_[pos_] == 'e' || text_[pos_] == 'E') &&
        (pos_ + 1 >= text_.size() || text_[pos_ + 1] != '(')) {
      std::size_t save = pos_++;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      std::size_t digits = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ == digits) pos_ = save;
      token = std::string(text_.substr(start, pos_ - start));
    }
    if (token.find('.') != std::string::npos) {
      if (token.find('/') != std::string::npos) fail("malformed number '" + token + "'");
      char* end = nullptr;
      double x = std::strtod(token.c_str(), &end);
      if (*end != '\0') fail("malformed number '" + token + "'");
      return {true, Scalar::inexact(x), {}};
    }
    try {
      return {true, Scalar::rational(parse_rational(token)), {}};
    } catch (const ParseError&) {
      fail("malformed number '" + token + "'");
    }
  }

  Value factor() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (accept("(")) {
      Value v = sum();
      if (!accept(")")) fail("expected ')'");
      return v;
    }
    if (accept("e(")) {
      auto close = text_.find(')', pos_);
      if (close == std::string_view::npos) fail("missing ')'");
      std::string inner(text_.substr(pos_, close - pos_));
      pos_ = close + 1;
      try {
        return {true, Scalar::polar(1, Phase::parse(inner)), {}};
      } catch (const ParseError& e) {
        fail(e.what());
      }
    }
    if (accept("s*")) return {false, {}, adjoint(make_path(g_, path_of(bracketed())))};
    if (text_.substr(pos_, 2) == "s[") {
      ++pos_;
      return {false, {}, make_path(g_, path_of(bracketed()))};
    }
    if (text_.substr(pos_, 2) == "p[") {
      ++pos_;
      return {false, {}, make_vertex(g_, vertex_of(bracketed()))};
    }
    if (c == 'i' && (pos_ + 1 >= text_.size() ||
                     !std::isalnum(static_cast<unsigned char>(text_[pos_ + 1])))) {
      ++pos_;
      return {true, Scalar::i(), {}};
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const Graph& g_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string monomial_text(const Graph& g, const MonomialKey& key) {
  if (key.alpha.is_empty() && key.beta.is_empty()) {
    return "p[" + g.name(key.alpha.range()) + "]";
  }
  if (key.alpha.is_empty()) return "s*[" + to_string(g, key.beta) + "]";
  if (key.beta.is_empty()) return "s[" + to_string(g, key.alpha) + "]";
  return "s[" + to_string(g, key.alpha) + "] * s*[" + to_string(g, key.beta) + "]";
}

}  // namespace

AlgebraElement parse_element(const Graph& g, std::string_view text) {
  return ElementParser(g, text).parse();
}

std::string to_string(const Graph& g, const AlgebraElement& a) {
  if (a.is_zero()) return "0";
  std::string out;
  for (const auto& [key, c] : a.terms()) {
    bool negative = c.renders_negative();
    Scalar shown = negative ? -c : c;
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    if (!(shown.is_exact() && shown == Scalar(1))) out += shown.to_string() + " * ";
    out += monomial_text(g, key);
  }
  return out;
}

namespace {

// For each vertex on an entrance-free cycle, the rotation based there.
std::vector<std::optional<Cycle>> rotations_by_vertex(const Graph& g) {
  std::vector<std::optional<Cycle>> out(g.vertex_count());
  for (const auto& c : entrance_free_classes(g)) {
    for (const Cycle& mu : c.rotations) out[index(mu.base())] = mu;
  }
  return out;
}

Path strip(const Graph& g, Path alpha,
           const std::vector<std::optional<Cycle>>& rotations) {
  while (true) {
    const auto& mu = rotations[index(alpha.source())];
    if (!mu || alpha.size() < mu->size()) return alpha;
    std::size_t keep = alpha.size() - mu->size();
    auto edges = alpha.edges();
    if (!std::equal(edges.begin() + static_cast<std::ptrdiff_t>(keep), edges.end(),
                    mu->path().edges().begin())) {
      return alpha;
    }
    alpha = alpha.take_front(g, keep);
  }
}

std::vector<Path> paths_with_source(const Graph& g, VertexId w, std::size_t bound) {
  std::vector<Path> out{Path::empty(w)};
  std::vector<Path> frontier = out;
  for (std::size_t len = 0; len < bound; ++len) {
    std::vector<Path> next;
    for (const Path& p : frontier) {
      for (EdgeId e : g.edges_out_of(p.range())) {
        next.push_back(Path::edge(g, e).concat(p));
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

}  // namespace

Path w_normal_form(const Graph& g, const Path& alpha) {
  return strip(g, alpha, rotations_by_vertex(g));
}

bool in_w(const Graph& g, const Path& alpha) {
  return w_normal_form(g, alpha) == alpha;
}

AlgebraElement element_w_normal_form(const Graph& g, const AlgebraElement& a) {
  auto rotations = rotations_by_vertex(g);
  AlgebraElement out;
  for (const auto& [key, c] : a.terms()) {
    out.add({strip(g, key.alpha, rotations), strip(g, key.beta, rotations)}, c);
  }
  return out;
}

AlgebraElement diag_expectation(const Graph& g, const AlgebraElement& a) {
  const AlgebraElement normal = element_w_normal_form(g, a);
  AlgebraElement out;
  for (const auto& [key, c] : normal.terms()) {
    if (key.alpha == key.beta) out.add(key, c);
  }
  return out;
}

AlgebraElement apply_rescaling(const Rescaling& r, const AlgebraElement& a) {
  AlgebraElement out;
  for (const auto& [key, c] : a.terms()) {
    out.add(key, c.times(r.along(key.alpha) * r.along(key.beta).conj()));
  }
  return out;
}

std::vector<AlgebraElement> ideal_elements(const Graph& g,
                                           const IdealGenerators& gens) {
  std::vector<AlgebraElement> out;
  for (VertexId v : gens.gaps) {
    AlgebraElement gap = make_vertex(g, v);
    for (EdgeId e : g.edges_into(v)) {
      gap = gap - multiply(g, make_edge(g, e), adjoint(make_edge(g, e)));
    }
    out.push_back(std::move(gap));
  }
  for (VertexId v : gens.projections) out.push_back(make_vertex(g, v));
  for (const auto& pin : gens.pins) {
    for (const Cycle& mu : pin.cls.rotations) {
      out.push_back(make_vertex(g, mu.base()).scaled(Scalar::polar(1, pin.kappa)) -
                    make_path(g, mu.path()));
    }
  }
  return out;
}

std::vector<AlgebraElement> ideal_spanning_family(const Graph& g,
                                                  const BoundaryPath& x,
                                                  std::size_t length_bound) {
  std::set<VertexId> visited;
  std::size_t horizon = x.prefix().size() + (x.is_finite() ? 0 : x.period().size());
  for (std::size_t n = 0; n <= horizon; ++n) visited.insert(x.vertex_at(g, n));
  std::vector<AlgebraElement> out;
  for (VertexId w : visited) {
    auto paths = paths_with_source(g, w, length_bound);
    for (const Path& a : paths) {
      for (const Path& b : paths) out.push_back(AlgebraElement::monomial(a, b));
    }
  }
  return out;
}

}  // namespace couniv
