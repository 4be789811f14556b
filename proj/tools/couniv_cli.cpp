// couniv: batch front-end producing deterministic JSON reports.
//
// Exit codes: 0 success, 1 verification failure, 2 input error.

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include "couniv/algebra.hpp"
#include "couniv/boundary.hpp"
#include "couniv/cycles.hpp"
#include "couniv/error.hpp"
#include "couniv/graph.hpp"
#include "couniv/representation.hpp"
#include "couniv/tails.hpp"
#include "couniv/transforms.hpp"

namespace {

using nlohmann::json;
using namespace couniv;

constexpr const char* kVersion = "1.0.0";

std::string sha256(const std::string& text) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) {
    out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return out.str();
}

Graph load_graph(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw ValidationError("cannot read '" + file + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

json names(const Graph& g, const std::vector<VertexId>& vs) {
  json out = json::array();
  for (VertexId v : vs) out.push_back(g.name(v));
  return out;
}

json edge_names(const Graph& g, std::span<const EdgeId> es) {
  json out = json::array();
  for (EdgeId e : es) out.push_back(g.name(e));
  return out;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

EdgePhases parse_kappa(const Graph& g, const std::string& text) {
  EdgePhases out;
  for (const auto& item : split(text, ',')) {
    auto colon = item.rfind(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == item.size()) {
      throw ParseError(0, "expected edge:phase in --kappa, got '" + item + "'");
    }
    EdgeId e = g.edge(item.substr(0, colon));
    if (!out.emplace(e, Phase::parse(item.substr(colon + 1))).second) {
      throw ParseError(0, "edge '" + g.name(e) + "' given twice in --kappa");
    }
  }
  return out;
}

json analyze(const Graph& g) {
  json r;
  r["vertices"] = g.vertex_count();
  r["edges"] = g.edge_count();
  r["sources"] = names(g, sources(g));
  r["simpleCycles"] = json::array();
  for (const Cycle& c : simple_cycles(g)) {
    r["simpleCycles"].push_back(edge_names(g, c.path().edges()));
  }
  r["entranceFreeClasses"] = json::array();
  for (const auto& c : entrance_free_classes(g)) {
    r["entranceFreeClasses"].push_back(edge_names(g, c.representative.path().edges()));
  }
  r["cuttingSet"] = edge_names(g, canonical_cutting_set(g).edges);
  bool cofinal = is_cofinal(g);
  r["cofinal"] = cofinal;
  r["simple"] = cofinal;
  return r;
}

json transform(const Graph& g, bool toeplitz, const std::string& cutting,
               const std::string& out_file) {
  json r;
  Graph result;
  if (toeplitz) {
    auto tg = toeplitz_graph(g);
    r["kind"] = "toeplitz";
    for (VertexId v : g.vertices()) {
      r["alphaVertices"][g.name(v)] = tg.graph.name(tg.alpha_v[index(v)]);
      if (auto b = tg.beta_v[index(v)]) r["betaVertices"][g.name(v)] = tg.graph.name(*b);
    }
    for (EdgeId e : g.edges()) {
      r["alphaEdges"][g.name(e)] = tg.graph.name(tg.alpha_e[index(e)]);
      if (auto b = tg.beta_e[index(e)]) r["betaEdges"][g.name(e)] = tg.graph.name(*b);
    }
    result = tg.graph;
  } else {
    CuttingSet x;
    if (cutting.empty()) {
      x = canonical_cutting_set(g);
    } else {
      for (const auto& id : split(cutting, ',')) x.edges.push_back(g.edge(id));
      std::sort(x.edges.begin(), x.edges.end());
    }
    auto f = reduced_graph(g, x);
    r["kind"] = "reduced";
    r["cuttingSet"] = edge_names(g, x.edges);
    for (VertexId v : g.vertices()) {
      r["zetaVertices"][g.name(v)] = f.graph.name(f.zeta_v[index(v)]);
    }
    r["zetaEdges"] = json::object();
    for (EdgeId e : g.edges()) {
      if (auto z = f.zeta_e[index(e)]) r["zetaEdges"][g.name(e)] = f.graph.name(*z);
    }
    result = f.graph;
  }
  r["vertices"] = result.vertex_count();
  r["edges"] = result.edge_count();
  r["graph"] = result.to_text();
  if (!out_file.empty()) {
    std::ofstream out(out_file);
    if (!out) throw ValidationError("cannot write '" + out_file + "'");
    out << result.to_text();
    r["written"] = out_file;
  }
  return r;
}

json tails(const Graph& base, bool toeplitz_of) {
  Graph g = toeplitz_of ? toeplitz_graph(base).graph : base;
  json r;
  r["graphVertices"] = g.vertex_count();
  r["tails"] = json::array();
  r["primIdeals"] = json::array();
  for (const auto& d : prim_ideal_catalog(g)) {
    json t;
    t["vertices"] = names(g, d.tail.vertices);
    t["kind"] = d.tail.is_gamma() ? "Gamma" : "Tau";
    if (d.tail.circle) {
      t["class"] = edge_names(g, d.tail.circle->representative.path().edges());
    }
    r["tails"].push_back(t);
    json p;
    p["kind"] = d.kind == PrimIdealDescriptor::Kind::Circle ? "Circle" : "GaugeInvariant";
    p["vertices"] = names(g, d.tail.vertices);
    p["generators"] = d.generators;
    if (d.kind == PrimIdealDescriptor::Kind::Circle) p["parameter"] = "z";
    r["primIdeals"].push_back(p);
  }
  return r;
}

json kappa_json(const Graph& g, const ClassPhases& kappa) {
  json out = json::object();
  for (const auto& [cycle, phase] : kappa) {
    out[to_string(g, cycle.path())] = {{"turns", phase.to_string()},
                                       {"value", Scalar::polar(1, phase).to_string()}};
  }
  return out;
}

json verify(const Graph& g, const std::string& rep_name, const std::string& level_name,
            std::optional<std::size_t> depth, const std::string& kappa_text, bool& pass) {
  Level level = parse_level(level_name);
  if (rep_name != "twisted" && !kappa_text.empty()) {
    throw ParseError(0, "--kappa is only meaningful with --rep=twisted");
  }
  if (rep_name == "twisted" && kappa_text.empty()) {
    throw ParseError(0, "--rep=twisted needs --kappa");
  }
  Representation rep = Representation::left_regular(g);
  if (rep_name == "left-regular") {
  } else if (rep_name == "boundary") {
    rep = Representation::boundary(g);
  } else if (rep_name == "omega") {
    rep = Representation::omega(g);
  } else if (rep_name == "twisted") {
    rep = Representation::twisted(g, parse_kappa(g, kappa_text));
  } else {
    throw ParseError(0, "unknown representation '" + rep_name + "'");
  }
  std::size_t d = depth.value_or(minimum_depth(g, level));
  auto report = verify_relations(rep, level, d);
  pass = report.pass();
  json r = to_json(g, report);
  r["rep"] = rep_name;
  r["depth"] = d;
  if (rep.kind() == RepKind::Twisted) {
    try {
      r["extractedKappa"] = kappa_json(g, extract_kappa(rep));
    } catch (const PreconditionError& e) {
      r["extractedKappa"] = nullptr;
      r["extractionError"] = e.what();
    }
  }
  return r;
}

json expect(const Graph& g, const std::string& text) {
  auto a = parse_element(g, text);
  json r;
  r["element"] = to_string(g, a);
  r["wNormalForm"] = to_string(g, element_w_normal_form(g, a));
  r["expectation"] = to_string(g, diag_expectation(g, a));
  return r;
}

std::string cell(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

/// Arrays of objects become column-aligned tables; other values print as
/// indented key/value lines.
void print_table(const json& rows, const std::string& indent) {
  std::vector<std::string> columns;
  for (const auto& row : rows) {
    for (const auto& [key, value] : row.items()) {
      if (std::find(columns.begin(), columns.end(), key) == columns.end()) columns.push_back(key);
    }
  }
  std::vector<std::size_t> width;
  for (const auto& c : columns) {
    std::size_t w = c.size();
    for (const auto& row : rows) {
      if (row.contains(c)) w = std::max(w, cell(row[c]).size());
    }
    width.push_back(w);
  }
  auto line = [&](auto&& text_of) {
    std::string out = indent;
    for (std::size_t i = 0; i < columns.size(); ++i) {
      std::string t = text_of(i);
      out += t;
      if (i + 1 < columns.size()) out += std::string(width[i] - t.size() + 2, ' ');
    }
    std::cout << out << '\n';
  };
  line([&](std::size_t i) { return columns[i]; });
  line([&](std::size_t i) { return std::string(width[i], '-'); });
  for (const auto& row : rows) {
    line([&](std::size_t i) { return row.contains(columns[i]) ? cell(row[columns[i]]) : ""; });
  }
}

void print_pretty(const json& j, const std::string& indent = "") {
  for (const auto& [key, value] : j.items()) {
    if (value.is_object()) {
      std::cout << indent << key << ":\n";
      print_pretty(value, indent + "  ");
    } else if (value.is_array() && !value.empty() &&
               std::all_of(value.begin(), value.end(), [](const json& v) { return v.is_object(); })) {
      std::cout << indent << key << ":\n";
      print_table(value, indent + "  ");
    } else if (value.is_string() && value.get<std::string>().find('\n') != std::string::npos) {
      std::cout << indent << key << ":\n";
      std::istringstream lines(value.get<std::string>());
      for (std::string l; std::getline(lines, l);) std::cout << indent << "  " << l << '\n';
    } else {
      std::cout << indent << key << ": " << cell(value) << '\n';
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph algebra toolkit: analysis, transforms, tails, relations"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();
  bool pretty = false;
  app.add_flag("--pretty", pretty, "Render the report as an indented table");

  std::string file;
  auto* analyze_cmd = app.add_subcommand("analyze", "Cycles, cutting set, cofinality");
  analyze_cmd->add_option("graph", file, "Graph file")->required();

  bool toeplitz = false, reduce = false;
  std::string cutting, out_file;
  auto* transform_cmd = app.add_subcommand("transform", "Toeplitz or reduced graph");
  transform_cmd->add_option("graph", file, "Graph file")->required();
  auto* t_flag = transform_cmd->add_flag("--toeplitz", toeplitz, "Build the Toeplitz graph");
  auto* r_flag = transform_cmd->add_flag("--reduce", reduce, "Delete a cutting set");
  t_flag->excludes(r_flag);
  transform_cmd->add_option("--cutting-set", cutting, "Comma-separated cutting-set edges")
      ->needs(r_flag);
  transform_cmd->add_option("--out", out_file, "Write the graph to this file");

  bool toeplitz_of = false;
  auto* tails_cmd = app.add_subcommand("tails", "Maximal tails and primitive ideals");
  tails_cmd->add_option("graph", file, "Graph file")->required();
  tails_cmd->add_flag("--toeplitz-of", toeplitz_of, "Catalog the Toeplitz graph instead");

  std::string rep_name, level_name, kappa_text;
  std::optional<std::size_t> depth;
  auto* verify_cmd = app.add_subcommand("verify", "Check relations in a representation");
  verify_cmd->add_option("graph", file, "Graph file")->required();
  verify_cmd->add_option("--rep", rep_name, "left-regular|boundary|omega|twisted")
      ->required()
      ->check(CLI::IsMember({"left-regular", "boundary", "omega", "twisted"}));
  verify_cmd->add_option("--level", level_name, "tck|ck|reduced|normalized")
      ->required()
      ->check(CLI::IsMember({"tck", "ck", "reduced", "normalized"}));
  verify_cmd->add_option("--depth", depth, "Test depth");
  verify_cmd->add_option("--kappa", kappa_text, "edge:num/den,... for --rep=twisted");

  std::string element;
  auto* expect_cmd = app.add_subcommand("expect", "W-normal form and diagonal expectation");
  expect_cmd->add_option("graph", file, "Graph file")->required();
  expect_cmd->add_option("--element", element, "Element expression")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  json report;
  int status = 0;
  try {
    Graph g = load_graph(file);
    json command;
    command["graph"] = file;
    json result;
    if (analyze_cmd->parsed()) {
      command["name"] = "analyze";
      result = analyze(g);
    } else if (transform_cmd->parsed()) {
      if (!toeplitz && !reduce) throw ParseError(0, "transform needs --toeplitz or --reduce");
      command["name"] = "transform";
      command["mode"] = toeplitz ? "toeplitz" : "reduce";
      if (!cutting.empty()) command["cuttingSet"] = cutting;
      result = transform(g, toeplitz, cutting, out_file);
    } else if (tails_cmd->parsed()) {
      command["name"] = "tails";
      command["toeplitzOf"] = toeplitz_of;
      result = tails(g, toeplitz_of);
    } else if (verify_cmd->parsed()) {
      command["name"] = "verify";
      command["rep"] = rep_name;
      command["level"] = level_name;
      if (depth) command["depth"] = *depth;
      if (!kappa_text.empty()) command["kappa"] = kappa_text;
      bool pass = false;
      result = verify(g, rep_name, level_name, depth, kappa_text, pass);
      status = pass ? 0 : 1;
    } else {
      command["name"] = "expect";
      command["element"] = element;
      result = expect(g, element);
    }
    report["command"] = command;
    report["fingerprint"] = "sha256:" + sha256(g.to_text());
    report["result"] = result;
    report["version"] = kVersion;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  if (pretty) {
    print_pretty(report);
  } else {
    std::cout << report.dump(2) << '\n';
  }
  return status;
}
