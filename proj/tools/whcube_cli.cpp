#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "whcube/cover.hpp"
#include "whcube/cube_complex.hpp"
#include "whcube/error.hpp"
#include "whcube/splittings.hpp"
#include "whcube/whitehead.hpp"
#include "whcube/words.hpp"

using namespace whcube;
using nlohmann::json;

namespace {

constexpr int kVerdict = 0;
constexpr int kInvalid = 2;
constexpr int kInconclusive = 3;

struct Options {
  std::string file;
  std::string word;
  std::string format = "json";
  std::string y;       // comma separated ball vertices
  std::string edges;   // comma separated base edges
  std::string kind = "double";
  std::string what = "complex";
  int radius = 3;
  int k_max = 4;
  int width_max = 2;
  int rank = 0;
  int vertex = -1;
  unsigned seed = 0;
  bool timing = false;
};

// a thrown Error that should be reported as inconclusive rather than invalid
bool scale_error(const std::string& code) {
  return code == "cover.boundary_touched" || code == "cover.boundary_vertex" ||
         code == "whitehead.insufficient_margin" || code == "splittings.not_stabilized";
}

std::string digest(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

std::vector<int> int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    if (tok.empty()) continue;
    try {
      out.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw Error("cli.bad_list", "not an integer: " + tok);
    }
  }
  return out;
}

struct Input {
  CubeComplex complex;
  json echo;
};

Input read_complex(const Options& o) {
  if (o.file.empty()) throw Error("cli.no_input", "an input file is required");
  std::ifstream f(o.file);
  if (!f) throw Error("cli.unreadable", "cannot read " + o.file);
  std::stringstream buf;
  buf << f.rdbuf();
  const std::string bytes = buf.str();
  json j;
  try {
    j = json::parse(bytes);
  } catch (const json::parse_error& e) {
    throw Error("cli.bad_json", e.what());
  }
  return {CubeComplex::from_json(j), {{"file", o.file}, {"digest", digest(bytes)}}};
}

CyclicWord read_word(const Options& o) {
  if (o.word.empty()) throw Error("cli.no_word", "--word is required");
  return make_cyclic_word(parse_word(o.word), o.rank);
}

int base_vertex(const Options& o, const CubeComplex& x) {
  if (o.vertex >= 0) return o.vertex;
  const auto vs = x.ids(0);
  if (vs.empty()) throw Error("cli.empty", "complex has no vertices");
  return vs.front();
}

std::string complex_dot(const CubeComplex& x) {
  std::ostringstream out;
  out << "graph X {\n";
  for (int v : x.ids(0)) out << "  v" << v << ";\n";
  for (int e : x.ids(1))
    out << "  v" << x.edge_vertex(e, 0) << " -- v" << x.edge_vertex(e, 1) << " [label=\"" << e << "\"];\n";
  for (int q : x.ids(2)) {
    const auto b = x.square_boundary(q);
    out << "  // square " << q << ": " << b[0] << ' ' << b[1] << ' ' << b[2] << ' ' << b[3] << "\n";
  }
  out << "}\n";
  return out.str();
}

std::string multigraph_dot(const Multigraph& g) {
  std::ostringstream out;
  out << "graph W {\n";
  for (int v = 0; v < g.vertex_count(); ++v) out << "  \"" << vertex_name(v) << "\";\n";
  for (auto [a, b] : g.edges) out << "  \"" << vertex_name(a) << "\" -- \"" << vertex_name(b) << "\";\n";
  out << "}\n";
  return out.str();
}

struct Result {
  int code = kVerdict;
  json report;
  std::string dot;          // set when the command has a DOT rendering
  std::vector<std::string> text;
};

Result run_validate(const Options& o) {
  auto in = read_complex(o);
  Result r;
  r.report = {{"input", in.echo}, {"verdict", "valid"}, {"dim", in.complex.dimension()},
              {"euler_characteristic", in.complex.euler_characteristic()}};
  json counts = json::array();
  for (int d = 0; d <= in.complex.dimension(); ++d) counts.push_back(in.complex.count(d));
  r.report["counts"] = counts;
  r.text = {"valid", "cells by dimension: " + counts.dump()};
  r.dot = complex_dot(in.complex);
  return r;
}

Result run_link(const Options& o) {
  auto in = read_complex(o);
  const int v = base_vertex(o, in.complex);
  const auto lk = vertex_link(in.complex, v);
  Result r;
  r.report = {{"input", in.echo}, {"vertex", v}, {"verdict", "link"}, {"link", to_json(lk)},
              {"shape", describe_shape(lk)}, {"flag", is_flag(lk)}};
  r.text = {"link of vertex " + std::to_string(v) + ": " + describe_shape(lk)};
  r.dot = to_dot(lk, "link");
  return r;
}

Result run_npc(const Options& o) {
  auto in = read_complex(o);
  const auto v = check_npc(in.complex);
  Result r;
  r.report = {{"input", in.echo}, {"verdict", v.npc ? "npc" : "not_npc"}};
  if (v.vertex) r.report["vertex"] = *v.vertex;
  if (!v.npc) r.report["reason"] = v.reason;
  r.text = {v.npc ? "npc" : "not npc: " + v.reason};
  return r;
}

Result run_whitehead(const Options& o) {
  auto in = read_complex(o);
  const auto ball = develop_ball(in.complex, base_vertex(o, in.complex), o.radius);
  auto ys = int_list(o.y);
  if (ys.empty()) ys = {0};
  const auto y = convex_hull(ball, ys);
  const auto wh = whitehead_complex(ball, y);
  Result r;
  r.report = {{"input", in.echo},
              {"verdict", wh.complex.empty() ? "empty" : betti0(wh.complex) > 1 ? "disconnected" : "connected"},
              {"Y", y.vertices},
              {"whitehead", to_json(wh)},
              {"shape", describe_shape(wh.complex)}};
  r.text = {"Y = " + json(y.vertices).dump(), "Wh(Y): " + describe_shape(wh.complex),
            std::string("stabilized: ") + (wh.stabilized ? "yes" : "no")};
  r.dot = to_dot(wh.complex, "Wh");
  if (!wh.stabilized) r.code = kInconclusive;
  return r;
}

Result run_one_end(const Options& o) {
  auto in = read_complex(o);
  const auto c = whitehead_lemma_certificate(in.complex);
  Result r;
  r.report = {{"input", in.echo}, {"verdict", c.certified ? "certified" : "inapplicable"},
              {"certificate", to_json(c)}};
  r.text = {c.certified ? "certified: one-ended or trivial"
                        : "inapplicable at vertex " + std::to_string(*c.vertex) + ": " + c.reason + " (" +
                              c.link_shape + ")"};
  r.code = c.certified ? kVerdict : kInconclusive;
  return r;
}

Result run_free_split(const Options& o) {
  auto in = read_complex(o);
  const auto f = search_free_splitting(in.complex, o.radius);
  Result r;
  r.report = {{"input", in.echo}, {"verdict", f ? "zero_cut" : "none_at_scale"}};
  if (f) {
    r.report["cut"] = to_json(*f);
    r.text = {"0-cut at Y = " + json(f->y.vertices).dump() + ", Wh(Y): " + describe_shape(f->wh.complex)};
    r.dot = to_dot(f->wh.complex, "Wh");
  } else {
    r.text = {"no 0-cut at radius " + std::to_string(o.radius)};
    r.code = kInconclusive;
  }
  return r;
}

Result run_grushko(const Options& o) {
  auto in = read_complex(o);
  const auto g = unfold_grushko(in.complex);
  Result r;
  r.report = {{"input", in.echo}, {"verdict", "decomposed"}, {"grushko", to_json(g)}};
  const auto h = homology_h1(in.complex);
  r.report["h1"] = {{"rank", h.rank}, {"torsion", h.torsion}};
  r.text = {"unfoldings: " + std::to_string(g.trace.size()),
            "graph part rank: " + std::to_string(g.graph_rank),
            "factors: " + std::to_string(g.factors.size()) + ", free squares: " + std::to_string(g.squares.size())};
  return r;
}

Result run_find_cuts(const Options& o) {
  auto in = read_complex(o);
  const auto ball = develop_ball(in.complex, base_vertex(o, in.complex), o.radius);
  Result r;
  json cuts = json::array();
  int best = -1;
  int unstable = 0;
  for (const auto& y : candidate_subcomplexes(ball)) {
    std::optional<CutReport> c;
    try {
      c = classify_cut(ball, y, o.k_max);
    } catch (const Error& e) {
      if (e.code() != "splittings.not_stabilized") throw;
      ++unstable;
      continue;
    }
    if (!c) continue;
    if (best < 0 || c->k < best) best = c->k;
    cuts.push_back(to_json(*c));
  }
  r.report = {{"input", in.echo}, {"verdict", best < 0 ? "none_at_scale" : "cuts"}, {"cuts", cuts},
              {"not_stabilized", unstable}};
  if (best >= 0) r.report["least_k"] = best;
  r.text = {std::to_string(cuts.size()) + " candidate Y with a cut of size <= " + std::to_string(o.k_max),
            best < 0 ? "none" : "least k: " + std::to_string(best)};
  if (best < 0) r.code = kInconclusive;
  return r;
}

Result run_periodic(const Options& o) {
  auto in = read_complex(o);
  const auto ball = develop_ball(in.complex, base_vertex(o, in.complex), o.radius);
  const auto edges = int_list(o.edges);
  Result r;
  r.report = {{"input", in.echo}};
  try {
    const auto p = detect_periodic_2cut(ball, o.width_max, {edges.begin(), edges.end()});
    if (p) {
      r.report["verdict"] = "periodic_2cut";
      r.report["witness"] = to_json(*p);
      r.report["replay"] = verify_periodic_2cut(ball, *p);
      r.text = {"periodic 2-cut at Y = " + json(p->cut.y.vertices).dump() + ", walls " +
                    json(p->cut.cut_walls).dump() + ", width " + std::to_string(p->cut.width),
                "phi = " + format_word(p->phi.element)};
    } else {
      r.report["verdict"] = "none_at_scale";
      r.text = {"no periodic 2-cut at radius " + std::to_string(o.radius) + ", width <= " +
                std::to_string(o.width_max)};
      r.code = kInconclusive;
    }
  } catch (const Error& e) {
    if (e.code() != "splittings.preflight_zero_cut" && e.code() != "splittings.preflight_one_cut") throw;
    r.report["verdict"] = "hypotheses_fail";
    r.report["code"] = e.code();
    r.report["message"] = e.what();
    r.text = {"hypotheses fail at scale: " + std::string(e.what())};
  }
  return r;
}

Result run_word_graph(const Options& o) {
  const auto w = read_word(o);
  const auto g = whitehead_graph(w);
  Result r;
  json edges = json::array();
  for (auto [a, b] : g.edges) edges.push_back({vertex_name(a), vertex_name(b)});
  r.report = {{"input", {{"word", o.word}, {"rank", w.rank}}}, {"verdict", "graph"}, {"edges", edges}};
  r.text = {std::to_string(g.edges.size()) + " edges"};
  for (auto [a, b] : g.edges) r.text.push_back(vertex_name(a) + " -- " + vertex_name(b));
  r.dot = multigraph_dot(g);
  return r;
}

Result run_shenitzer(const Options& o) {
  const auto w = read_word(o);
  const auto v = shenitzer_test(w);
  Result r;
  r.report = {{"input", {{"word", o.word}, {"rank", w.rank}}},
              {"verdict", v.no_free_splitting ? "no_free_splitting" : "inconclusive"}};
  if (!v.no_free_splitting) r.report["reason"] = v.reason;
  if (v.cut_vertex) r.report["cut_vertex"] = vertex_name(*v.cut_vertex);
  r.text = {v.no_free_splitting ? "no free splitting" : "inconclusive: " + v.reason};
  r.code = v.no_free_splitting ? kVerdict : kInconclusive;
  return r;
}

Result run_build(const Options& o) {
  const auto w = read_word(o);
  CubeComplex x;
  if (o.kind == "double")
    x = double_complex(w);
  else if (o.kind == "cylinder")
    x = mapping_cylinder_complex(w);
  else
    throw Error("cli.bad_kind", "--kind must be double or cylinder");
  Result r;
  r.report = x.to_json();
  r.text = {o.kind + " over " + format_word(w.letters) + ": " + std::to_string(x.count(0)) + " vertices, " +
            std::to_string(x.count(1)) + " edges, " + std::to_string(x.count(2)) + " squares"};
  r.dot = complex_dot(x);
  return r;
}

Result run_export_dot(const Options& o) {
  if (o.what == "link") return run_link(o);
  if (o.what == "whitehead") return run_whitehead(o);
  if (o.what != "complex") throw Error("cli.bad_what", "--what must be complex, link or whitehead");
  auto in = read_complex(o);
  Result r;
  r.report = {{"input", in.echo}};
  r.dot = complex_dot(in.complex);
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Whitehead complexes and splittings of NPC cube complexes"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--format", o.format, "json, dot or text")->check(CLI::IsMember({"json", "dot", "text"}));
  app.add_option("--seed", o.seed, "replay seed, echoed in the report");
  app.add_flag("--timing", o.timing, "add wall-clock time to the report");

  using Runner = Result (*)(const Options&);
  struct Command {
    const char* name;
    const char* help;
    Runner run;
    bool file, ball, word;
  };
  const std::vector<Command> commands = {
      {"validate", "check a complex file", run_validate, true, false, false},
      {"link", "link of a vertex", run_link, true, false, false},
      {"npc-check", "Gromov link condition", run_npc, true, false, false},
      {"whitehead", "Whitehead complex of a convex hull in a ball", run_whitehead, true, true, false},
      {"one-end-cert", "links connected without cut simplices", run_one_end, true, false, false},
      {"free-split", "search for a 0-cut", run_free_split, true, true, false},
      {"grushko", "unfold a square complex", run_grushko, true, false, false},
      {"find-cuts", "minimal cut sets of candidate Whitehead complexes", run_find_cuts, true, true, false},
      {"periodic-2cut", "search for a periodic 2-cut", run_periodic, true, true, false},
      {"word-graph", "Whitehead graph of a cyclic word", run_word_graph, false, false, true},
      {"shenitzer", "free splitting test for a one-relator double", run_shenitzer, false, false, true},
      {"build-double", "square complex from a word", run_build, false, false, true},
      {"export-dot", "DOT rendering", run_export_dot, true, true, false},
  };
  const Command* chosen = nullptr;
  std::vector<std::pair<CLI::App*, const Command*>> subs;
  for (const auto& c : commands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    if (c.file) sub->add_option("file", o.file, "complex JSON")->required();
    if (c.ball || c.file) sub->add_option("--vertex", o.vertex, "base vertex (default: least id)");
    if (c.ball) {
      sub->add_option("--radius", o.radius, "ball radius")->check(CLI::NonNegativeNumber);
      sub->add_option("--y", o.y, "ball vertices whose hull is Y (default 0)");
    }
    if (c.word) {
      sub->add_option("--word", o.word, "word, uppercase = inverse")->required();
      sub->add_option("--rank", o.rank, "free group rank (default: from the word)");
    }
    if (std::string(c.name) == "find-cuts") sub->add_option("--k-max", o.k_max, "largest cut size");
    if (std::string(c.name) == "periodic-2cut") {
      sub->add_option("--width-max", o.width_max, "largest width");
      sub->add_option("--edges", o.edges, "only walls dual to these base edges");
    }
    if (std::string(c.name) == "build-double") sub->add_option("--kind", o.kind, "double or cylinder");
    if (std::string(c.name) == "export-dot") sub->add_option("--what", o.what, "complex, link or whitehead");
    subs.emplace_back(sub, &c);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kInvalid;
  }
  for (auto [sub, c] : subs)
    if (sub->parsed()) chosen = c;

  const auto t0 = std::chrono::steady_clock::now();
  Result r;
  try {
    r = chosen->run(o);
  } catch (const Error& e) {
    std::cerr << "error [" << e.code() << "]: " << e.what() << "\n";
    if (scale_error(e.code())) {
      json j = {{"command", chosen->name}, {"verdict", "inconclusive"}, {"code", e.code()}, {"message", e.what()}};
      std::cout << j.dump(2) << "\n";
      return kInconclusive;
    }
    return kInvalid;
  }

  if (o.format == "dot" || std::string(chosen->name) == "export-dot") {
    if (r.dot.empty()) {
      std::cerr << "error [cli.no_dot]: " << chosen->name << " has no DOT rendering\n";
      return kInvalid;
    }
    std::cout << r.dot;
    return r.code;
  }
  if (o.format == "text") {
    for (const auto& line : r.text) std::cout << line << "\n";
    return r.code;
  }
  json out;
  if (std::string(chosen->name) == "build-double") {
    out = r.report;
  } else {
    out = r.report;
    out["command"] = chosen->name;
    json params = {{"seed", o.seed}};
    if (chosen->ball) params["radius"] = o.radius;
    if (std::string(chosen->name) == "find-cuts") params["k_max"] = o.k_max;
    if (std::string(chosen->name) == "periodic-2cut") {
      params["width_max"] = o.width_max;
      if (!o.edges.empty()) params["edges"] = int_list(o.edges);
    }
    out["parameters"] = params;
  }
  if (o.timing)
    out["timing_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cout << out.dump(2) << "\n";
  return r.code;
}
