#include "couniv/representation.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <set>

#include "couniv/cycles.hpp"
#include "couniv/error.hpp"

namespace couniv {

std::string to_string(const Graph& g, const BasisElement& x) {
  if (auto p = std::get_if<Path>(&x)) return to_string(g, *p);
  return to_string(g, std::get<BoundaryPath>(x));
}

std::string to_string(const Graph& g, const Vector& v) {
  if (v.empty()) return "0";
  std::string out;
  for (const auto& [x, c] : v) {
    if (!out.empty()) out += " + ";
    out += c.to_string() + " * [" + to_string(g, x) + "]";
  }
  return out;
}

std::string to_string(const Graph& g, const TestPoint& t) {
  if (!t.stand_in) return to_string(g, t.x);
  // An aperiodic path sharing this prefix.
  const auto& x = std::get<BoundaryPath>(t.x);
  return to_string(g, x.prefix()) + "|~";
}

namespace {

struct Continuation {
  BoundaryPath z;
  bool stand_in;
};

bool same(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return a == b;
  return std::abs(a.approx() - b.approx()) <= kTolerance;
}

bool same(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) return false;
  for (auto i = a.begin(), j = b.begin(); i != a.end(); ++i, ++j) {
    if (!(i->first == j->first) || !same(i->second, j->second)) return false;
  }
  return true;
}

bool purely_periodic(const BoundaryPath& x) {
  return !x.is_finite() && x.prefix().is_empty();
}

}  // namespace

struct Representation::State {
  RepKind kind;
  Graph g;
  EdgePhases kappa;
  Rescaling twist;
  bool inexact = false;
  std::vector<std::vector<EdgeId>> free_sets;

  mutable std::mutex mutex;
  mutable std::map<std::size_t, std::vector<TestPoint>> cache;
  mutable std::optional<std::vector<std::optional<Continuation>>> continuations;

  bool omega_member(const BoundaryPath& x) const {
    if (x.is_finite()) return true;
    auto edges = x.period().edge_set();
    return std::find(free_sets.begin(), free_sets.end(), edges) != free_sets.end();
  }

  bool in_basis(const BoundaryPath& x) const {
    return kind != RepKind::Omega || omega_member(x);
  }

  // Vertices from which an aperiodic infinite path starts: those reaching a
  // strongly connected component with more internal edges than vertices.
  std::vector<char> aperiodic_sources() const {
    std::vector<char> rich(g.vertex_count(), 0);
    for (const auto& comp : strongly_connected_components(g)) {
      std::size_t internal = 0;
      for (VertexId v : comp) {
        for (EdgeId e : g.edges_into(v)) {
          if (std::binary_search(comp.begin(), comp.end(), g.source(e))) ++internal;
        }
      }
      if (internal > comp.size()) {
        for (VertexId v : comp) rich[index(v)] = 1;
      }
    }
    Reachability reach(g);
    std::vector<char> out(g.vertex_count(), 0);
    for (VertexId v : g.vertices()) {
      for (VertexId w : g.vertices()) {
        if (rich[index(w)] && reach.reaches(v, w)) out[index(v)] = 1;
      }
    }
    return out;
  }

  std::vector<std::optional<Continuation>> compute_continuations() const {
    std::vector<std::vector<Cycle>> rotations(g.vertex_count());
    std::size_t longest = 0;
    for (const Cycle& c : simple_cycles(g)) {
      longest = std::max(longest, c.size());
      for (std::size_t k = 0; k < c.size(); ++k) {
        Cycle mu = c.rotated(g, k);
        rotations[index(mu.base())].push_back(mu);
      }
    }
    const std::size_t horizon = g.vertex_count() + longest + 1;
    auto aperiodic = aperiodic_sources();

    std::vector<std::optional<Continuation>> out(g.vertex_count());
    for (VertexId s : g.vertices()) {
      std::optional<BoundaryPath> best, fallback;
      for (std::size_t d = 0; d <= horizon && !best; ++d) {
        for (const Path& p : paths_up_to(g, s, d, PathMode::AtMost)) {
          if (p.size() != d) continue;
          std::vector<BoundaryPath> found;
          if (g.is_source(p.source())) found.push_back(BoundaryPath::finite(g, p));
          for (const Cycle& mu : rotations[index(p.source())]) {
            found.push_back(BoundaryPath::periodic(g, p, mu));
          }
          for (auto& x : found) {
            if (purely_periodic(x)) continue;
            if (!fallback || x < *fallback) fallback = x;
            if (in_basis(x) && (!best || x < *best)) best = x;
          }
        }
      }
      if (best) {
        out[index(s)] = Continuation{*best, false};
        continue;
      }
      if (kind == RepKind::Omega && aperiodic[index(s)] && fallback) {
        out[index(s)] = Continuation{*fallback, true};
        continue;
      }
      for (const Cycle& mu : rotations[index(s)]) {
        auto x = BoundaryPath::periodic(g, Path::empty(s), mu);
        if (in_basis(x)) {
          out[index(s)] = Continuation{x, false};
          break;
        }
      }
    }
    return out;
  }

  std::vector<TestPoint> compute_test_set(std::size_t length) const {
    std::vector<TestPoint> out;
    if (kind == RepKind::LeftRegular) {
      for (VertexId v : g.vertices()) {
        for (Path& p : paths_up_to(g, v, length, PathMode::AtMost)) {
          out.push_back({std::move(p), false});
        }
      }
    } else {
      if (!continuations) continuations = compute_continuations();
      for (VertexId v : g.vertices()) {
        for (const Path& p : paths_up_to(g, v, length, PathMode::Boundary)) {
          const auto& c = (*continuations)[index(p.source())];
          if (!c) continue;
          out.push_back({prepend(g, p, c->z), c->stand_in});
        }
      }
    }
    std::sort(out.begin(), out.end(),
              [](const TestPoint& a, const TestPoint& b) { return a.x < b.x; });
    return out;
  }
};

Representation Representation::left_regular(const Graph& g) {
  auto s = std::make_shared<State>();
  s->kind = RepKind::LeftRegular;
  s->g = g;
  return Representation(s);
}

namespace {

std::vector<std::vector<EdgeId>> free_edge_sets(const Graph& g) {
  std::vector<std::vector<EdgeId>> out;
  for (const auto& c : entrance_free_classes(g)) out.push_back(c.edge_set);
  return out;
}

}  // namespace

Representation Representation::boundary(const Graph& g) {
  auto s = std::make_shared<State>();
  s->kind = RepKind::Boundary;
  s->g = g;
  return Representation(s);
}

Representation Representation::omega(const Graph& g) {
  auto s = std::make_shared<State>();
  s->kind = RepKind::Omega;
  s->g = g;
  s->free_sets = free_edge_sets(g);
  return Representation(s);
}

Representation Representation::twisted(const Graph& g, const EdgePhases& kappa) {
  class_phases(g, kappa);  // validates the edges
  auto s = std::make_shared<State>();
  s->kind = RepKind::Twisted;
  s->g = g;
  s->kappa = kappa;
  s->twist.factors = kappa;
  s->inexact = std::any_of(kappa.begin(), kappa.end(),
                           [](const auto& kv) { return !kv.second.is_exact(); });
  return Representation(s);
}

RepKind Representation::kind() const { return state_->kind; }
const Graph& Representation::graph() const { return state_->g; }
const EdgePhases& Representation::kappa() const { return state_->kappa; }

bool Representation::accepts(const BasisElement& x) const {
  if (state_->kind == RepKind::LeftRegular) return std::holds_alternative<Path>(x);
  auto b = std::get_if<BoundaryPath>(&x);
  return b && state_->in_basis(*b);
}

Vector Representation::act(const AlgebraElement& a, const TestPoint& t) const {
  const State& s = *state_;
  bool inexact = s.inexact || std::any_of(a.terms().begin(), a.terms().end(),
                                          [](const auto& kv) { return !kv.second.is_exact(); });
  Vector out;
  auto accumulate = [&](BasisElement y, Scalar c) {
    auto it = out.find(y);
    if (it == out.end()) {
      if (!c.is_zero()) out.emplace(std::move(y), std::move(c));
      return;
    }
    it->second += c;
    if (it->second.is_zero()) out.erase(it);
  };
  for (const auto& [key, c0] : a.terms()) {
    Scalar c = inexact ? c0.to_inexact() : c0;
    if (s.kind == RepKind::Twisted) {
      c = c.times(s.twist.along(key.alpha) * s.twist.along(key.beta).conj());
    }
    if (auto p = std::get_if<Path>(&t.x)) {
      if (!p->has_prefix(key.beta)) continue;
      accumulate(key.alpha.concat(p->drop_front(s.g, key.beta.size())), c);
    } else {
      auto y = strip_prefix(s.g, std::get<BoundaryPath>(t.x), key.beta);
      if (!y) continue;
      accumulate(prepend(s.g, key.alpha, *y), c);
    }
  }
  return out;
}

Vector Representation::apply(const AlgebraElement& a, const BasisElement& x) const {
  if (!accepts(x)) {
    throw PreconditionError("'" + to_string(state_->g, x) +
                            "' is not a basis element of this representation");
  }
  return act(a, TestPoint{x, false});
}

Vector Representation::apply(const AlgebraElement& a, const Vector& v) const {
  Vector out;
  for (const auto& [x, c] : v) {
    for (auto& [y, d] : apply(a, x)) {
      auto it = out.find(y);
      Scalar term = c * d;
      if (it == out.end()) {
        if (!term.is_zero()) out.emplace(y, term);
      } else {
        it->second += term;
        if (it->second.is_zero()) out.erase(it);
      }
    }
  }
  return out;
}

const std::vector<TestPoint>& Representation::test_set(std::size_t key_length) const {
  std::lock_guard lock(state_->mutex);
  auto it = state_->cache.find(key_length);
  if (it == state_->cache.end()) {
    it = state_->cache.emplace(key_length, state_->compute_test_set(key_length)).first;
  }
  return it->second;
}

std::optional<TestPoint> difference_witness(const Representation& rep,
                                            const AlgebraElement& a,
                                            const AlgebraElement& b,
                                            std::size_t key_length) {
  key_length = std::max({key_length, a.max_key_length(), b.max_key_length()});
  for (const TestPoint& t : rep.test_set(key_length)) {
    if (!same(rep.act(a, t), rep.act(b, t))) return t;
  }
  return std::nullopt;
}

bool operator_equal(const Representation& rep, const AlgebraElement& a,
                    const AlgebraElement& b) {
  return !difference_witness(rep, a, b, 0);
}

Family::Family(Representation rep, Graph base, std::vector<AlgebraElement> vertices,
               std::vector<AlgebraElement> edges)
    : rep_(std::move(rep)),
      base_(std::move(base)),
      vertices_(std::move(vertices)),
      edges_(std::move(edges)) {
  if (vertices_.size() != base_.vertex_count() || edges_.size() != base_.edge_count()) {
    throw ValidationError("family does not match its base graph");
  }
}

Family Family::standard(const Representation& rep) {
  const Graph& g = rep.graph();
  std::vector<AlgebraElement> vs, es;
  for (VertexId v : g.vertices()) vs.push_back(make_vertex(g, v));
  for (EdgeId e : g.edges()) es.push_back(make_edge(g, e));
  return Family(rep, g, std::move(vs), std::move(es));
}

AlgebraElement Family::path(const Path& p) const {
  if (p.is_empty()) return vertex(p.range());
  AlgebraElement out = edge(p[0]);
  for (std::size_t i = 1; i < p.size(); ++i) {
    out = multiply(rep_.graph(), out, edge(p[i]));
  }
  return out;
}

std::size_t Family::max_image_length() const {
  std::size_t n = 0;
  for (const auto& a : vertices_) n = std::max(n, a.max_key_length());
  for (const auto& a : edges_) n = std::max(n, a.max_key_length());
  return n;
}

Family toeplitz_family(const Graph& base, const ToeplitzGraph& tg,
                       const Representation& rep) {
  const Graph& t = tg.graph;
  std::vector<AlgebraElement> vs, es;
  for (VertexId v : base.vertices()) {
    AlgebraElement q = make_vertex(t, tg.alpha_v[index(v)]);
    if (auto b = tg.beta_v[index(v)]) q += make_vertex(t, *b);
    vs.push_back(std::move(q));
  }
  for (EdgeId e : base.edges()) {
    AlgebraElement s = make_edge(t, tg.alpha_e[index(e)]);
    if (auto b = tg.beta_e[index(e)]) s += make_edge(t, *b);
    es.push_back(std::move(s));
  }
  return Family(rep, base, std::move(vs), std::move(es));
}

Family rescale_family(const Representation& twisted) {
  if (twisted.kind() != RepKind::Twisted) {
    throw PreconditionError("rescale_family needs a twisted representation");
  }
  const Graph& g = twisted.graph();
  std::vector<AlgebraElement> vs, es;
  for (VertexId v : g.vertices()) vs.push_back(make_vertex(g, v));
  for (EdgeId e : g.edges()) {
    AlgebraElement s = make_edge(g, e);
    if (auto it = twisted.kappa().find(e); it != twisted.kappa().end()) {
      s = s.scaled(Scalar::polar(1, it->second.conj()));
    }
    es.push_back(std::move(s));
  }
  bool inexact = std::any_of(twisted.kappa().begin(), twisted.kappa().end(),
                             [](const auto& kv) { return !kv.second.is_exact(); });
  if (inexact) {
    for (auto& a : vs) a = a.to_inexact();
    for (auto& a : es) a = a.to_inexact();
  }
  return Family(twisted, g, std::move(vs), std::move(es));
}

namespace {

// The phase k with S = k P on the test set, where P is nonzero; empty if
// S is not such a multiple.
std::optional<Phase> scalar_ratio(const Representation& rep, const AlgebraElement& s,
                                  const AlgebraElement& p, std::size_t depth,
                                  std::optional<TestPoint>& witness) {
  std::size_t len = std::max({depth, s.max_key_length(), p.max_key_length()});
  const auto& tests = rep.test_set(len);
  for (const TestPoint& t : tests) {
    Vector pv = rep.act(p, t);
    auto self = pv.find(t.x);
    if (self == pv.end()) continue;
    Vector sv = rep.act(s, t);
    auto hit = sv.find(t.x);
    if (hit == sv.end() || !same(self->second, Scalar(1)) || !hit->second.is_unit()) {
      witness = t;
      return std::nullopt;
    }
    Phase k = hit->second.to_phase();
    witness = difference_witness(rep, s, p.scaled(Scalar::polar(1, k)), len);
    if (witness) return std::nullopt;
    return k;
  }
  witness = tests.empty() ? std::nullopt : std::optional<TestPoint>(tests.front());
  return std::nullopt;
}

}  // namespace

ClassPhases extract_kappa(const Family& f) {
  ClassPhases out;
  for (const auto& c : entrance_free_classes(f.base())) {
    const Path& mu = c.representative.path();
    std::optional<TestPoint> witness;
    auto k = scalar_ratio(f.rep(), f.path(mu), f.vertex(mu.range()), 0, witness);
    if (!k) {
      throw PreconditionError("s[" + to_string(f.base(), mu) +
                              "] is not a scalar multiple of p[" +
                              f.base().name(mu.range()) + "]");
    }
    out.emplace(c.representative, *k);
  }
  return out;
}

ClassPhases extract_kappa(const Representation& rep) {
  return extract_kappa(Family::standard(rep));
}

std::string to_string(Level level) {
  switch (level) {
    case Level::TCK: return "tck";
    case Level::CK: return "ck";
    case Level::Reduced: return "reduced";
    case Level::NormalizedReduced: return "normalized";
  }
  return "";
}

Level parse_level(std::string_view text) {
  for (Level l : {Level::TCK, Level::CK, Level::Reduced, Level::NormalizedReduced}) {
    if (text == to_string(l)) return l;
  }
  throw ParseError(0, "unknown relation level '" + std::string(text) + "'");
}

std::size_t minimum_depth(const Graph& base, Level level) {
  if (level == Level::TCK || level == Level::CK) return 1;
  std::size_t longest = 0;
  for (const auto& c : entrance_free_classes(base)) {
    longest = std::max(longest, c.representative.size());
  }
  return longest + 1;
}

RelationReport verify_relations(const Family& f, Level level, std::size_t depth) {
  if (depth < minimum_depth(f.base(), level)) {
    throw PreconditionError("depth " + std::to_string(depth) + " is below the minimum " +
                            std::to_string(minimum_depth(f.base(), level)));
  }
  const Graph& g = f.base();
  const Graph& h = f.rep().graph();
  const Representation& rep = f.rep();
  RelationReport report{level, {}, {}};

  auto check = [&](const std::string& relation, const AlgebraElement& lhs,
                   const AlgebraElement& rhs) {
    if (auto w = difference_witness(rep, lhs, rhs, depth)) {
      report.failures.push_back({relation, to_string(h, *w)});
    }
  };
  auto p = [&](VertexId v) { return "p[" + g.name(v) + "]"; };
  auto s = [&](EdgeId e) { return "s[" + g.name(e) + "]"; };
  auto ss = [&](EdgeId e) { return "s*[" + g.name(e) + "]"; };
  auto range_of = [&](EdgeId e) {
    return multiply(h, f.edge(e), adjoint(f.edge(e)));
  };
  const AlgebraElement zero;

  for (VertexId v : g.vertices()) {
    const auto& pv = f.vertex(v);
    check("(T1) " + p(v) + " * " + p(v) + " = " + p(v), multiply(h, pv, pv), pv);
    check("(T1) " + p(v) + "^* = " + p(v), adjoint(pv), pv);
    for (VertexId w : g.vertices()) {
      if (w <= v) continue;
      check("(T1) " + p(v) + " * " + p(w) + " = 0", multiply(h, pv, f.vertex(w)), zero);
    }
  }
  for (EdgeId e : g.edges()) {
    check("(T2) " + ss(e) + " * " + s(e) + " = " + p(g.source(e)),
          multiply(h, adjoint(f.edge(e)), f.edge(e)), f.vertex(g.source(e)));
  }
  for (VertexId v : g.vertices()) {
    auto in = g.edges_into(v);
    for (EdgeId e : in) {
      check("(T3) " + p(v) + " * " + s(e) + " * " + ss(e) + " = " + s(e) + " * " + ss(e),
            multiply(h, f.vertex(v), range_of(e)), range_of(e));
    }
    for (EdgeId e : in) {
      for (EdgeId e2 : in) {
        if (e2 <= e) continue;
        check("(T3) " + ss(e) + " * " + s(e2) + " = 0",
              multiply(h, adjoint(f.edge(e)), f.edge(e2)), zero);
      }
    }
  }
  if (level == Level::TCK) return report;

  for (VertexId v : g.vertices()) {
    if (g.is_source(v)) continue;
    AlgebraElement sum;
    std::string text;
    for (EdgeId e : g.edges_into(v)) {
      sum += range_of(e);
      text += (text.empty() ? "" : " + ") + s(e) + " * " + ss(e);
    }
    check("(CK) " + p(v) + " = " + text, f.vertex(v), sum);
  }
  if (level == Level::CK) return report;

  for (const auto& c : entrance_free_classes(g)) {
    for (const Cycle& mu : c.rotations) {
      std::string sym = "s[" + to_string(g, mu.path()) + "]";
      AlgebraElement smu = f.path(mu.path());
      const AlgebraElement& pr = f.vertex(mu.base());
      if (level == Level::NormalizedReduced) {
        check("(R) " + sym + " = " + p(mu.base()), smu, pr);
        continue;
      }
      std::optional<TestPoint> witness;
      auto k = scalar_ratio(rep, smu, pr, depth, witness);
      if (!k) {
        report.failures.push_back(
            {"(R) " + sym + " = k * " + p(mu.base()) + " for a unit scalar k",
             witness ? to_string(h, *witness) : "none"});
      } else if (mu == c.representative) {
        report.kappa.emplace(c.representative, *k);
      }
    }
  }
  return report;
}

RelationReport verify_relations(const Representation& rep, Level level,
                                std::size_t depth) {
  return verify_relations(Family::standard(rep), level, depth);
}

nlohmann::json to_json(const Graph& base, const RelationReport& r) {
  nlohmann::json j;
  j["level"] = to_string(r.level);
  j["pass"] = r.pass();
  j["failures"] = nlohmann::json::array();
  for (const auto& f : r.failures) {
    j["failures"].push_back({{"relation", f.relation}, {"witness", f.witness}});
  }
  if (r.level == Level::Reduced) {
    j["kappa"] = nlohmann::json::object();
    for (const auto& [cycle, phase] : r.kappa) {
      j["kappa"][to_string(base, cycle.path())] = phase.to_string();
    }
  }
  return j;
}

}  // namespace couniv
