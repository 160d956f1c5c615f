// Batch front end: parse graph / face-graph / PD files, dispatch the
// computations, and emit canonical text (or --json) on stdout. Exit codes:
// 0 success, 1 input error, 2 broken internal invariant.

#include <exception>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "reltutte/activities.hpp"
#include "reltutte/dc.hpp"
#include "reltutte/errors.hpp"
#include "reltutte/graph.hpp"
#include "reltutte/io.hpp"
#include "reltutte/knots.hpp"
#include "reltutte/pointed.hpp"
#include "reltutte/poly.hpp"
#include "reltutte/psi.hpp"

namespace {

using namespace reltutte;

int parse_id(const std::string& tok) {
  try {
    size_t pos = 0;
    int v = std::stoi(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw Error("bad edge id '" + tok + "'");
  }
}

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string item; std::getline(is, item, sep);) out.push_back(item);
  return out;
}

std::set<int> parse_id_set(const std::string& s) {
  std::set<int> out;
  if (s.empty()) return out;
  for (const std::string& tok : split_on(s, ',')) out.insert(parse_id(tok));
  return out;
}

mpq_class parse_rational(const std::string& s) {
  mpq_class q;
  if (s.empty() || q.set_str(s, 10) != 0)
    throw Error("bad rational '" + s + "' (expected integer or num/den)");
  if (q.get_den() == 0) throw Error("bad rational '" + s + "': zero denominator");
  q.canonicalize();
  return q;
}

// "1=1/2,2=1/3" -> per-edge survival probabilities; `fallback` fills in any
// edge the list leaves out.
std::map<int, mpq_class> probability_map(const ColoredMultigraph& g, const std::string& entries,
                                         const std::string& fallback) {
  std::map<int, mpq_class> p;
  if (!entries.empty()) {
    for (const std::string& item : split_on(entries, ',')) {
      auto eq = item.find('=');
      if (eq == std::string::npos)
        throw Error("bad probability entry '" + item + "' (expected id=num/den)");
      p[parse_id(item.substr(0, eq))] = parse_rational(item.substr(eq + 1));
    }
  }
  if (!fallback.empty()) {
    mpq_class def = parse_rational(fallback);
    for (const Edge& e : g.edges()) p.emplace(e.id, def);
  }
  return p;
}

std::set<int> zero_set_from_option(const ColoredMultigraph& g, const std::string& opt) {
  if (opt == "from-color") return detail::default_zero_set(g);
  return parse_id_set(opt);
}

// Uses the labels stored in the file when any regular edge carries one,
// otherwise labels the regular edges 1, 2, ... in edge-id order.
ProperLabeling choose_labeling(const ColoredMultigraph& g, const std::set<int>& H) {
  for (const Edge& e : g.edges()) {
    if (!H.count(e.id) && e.label != 0) return labeling_from_graph(g, H);
  }
  return default_labeling(g, H);
}

void emit(bool json, const std::string& result,
          const std::vector<std::pair<std::string, std::string>>& extras = {}) {
  if (json) {
    nlohmann::json j;
    j["result"] = result;
    for (const auto& [k, v] : extras) j[k] = v;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << result << "\n";
  }
}

// ---------------------------------------------------------------------------
// selftest: the pinned examples this build must reproduce
// ---------------------------------------------------------------------------

struct SelfCheck {
  std::string name;
  std::function<std::pair<std::string, std::string>()> run;  // expected, got
};

ColoredMultigraph parallel_pair() {
  return ColoredMultigraph({1, 2}, {{1, 1, 2, "l", 0}, {2, 1, 2, "0", 0}});
}

ColoredMultigraph pointed_triangle() {
  return ColoredMultigraph({1, 2, 3}, {{1, 1, 2, "l", 0}, {2, 2, 3, "m", 0}, {3, 3, 1, "0", 0}});
}

ColoredMultigraph embedded_trefoil_detour() {
  return ColoredMultigraph({1, 2, 3}, {{1, 1, 2, "+", 0},
                                       {2, 2, 3, "+", 0},
                                       {3, 3, 1, "+", 0},
                                       {4, 1, 3, "0", 0},
                                       {5, 1, 3, "0", 0}});
}

std::string splits_to_string(const std::vector<ContractingSplit>& splits) {
  std::ostringstream os;
  for (size_t i = 0; i < splits.size(); ++i) {
    os << (i ? " " : "") << "{";
    for (size_t j = 0; j < splits[i].contracting.size(); ++j)
      os << (j ? "," : "") << splits[i].contracting[j];
    os << "}";
  }
  return os.str();
}

std::string tag_to_string(ActivityTag t) {
  switch (t) {
    case ActivityTag::InternallyActive: return "internally-active";
    case ActivityTag::InternallyInactive: return "internally-inactive";
    case ActivityTag::ExternallyActive: return "externally-active";
    case ActivityTag::ExternallyInactive: return "externally-inactive";
  }
  return "?";
}

std::vector<SelfCheck> self_checks() {
  std::vector<SelfCheck> checks;
  auto add = [&](std::string name, std::function<std::pair<std::string, std::string>()> run) {
    checks.push_back({std::move(name), std::move(run)});
  };

  add("substitute X[+] -> -A^-3", [] {
    std::map<VarId, MultiPoly> sub{{var_X("+"), parse_poly("-A^-3")}};
    return std::make_pair(std::string("-A^-3"),
                          substitute(MultiPoly::var(var_X("+")), sub).to_string());
  });
  add("substitute d -> -(A^2+A^-2)", [] {
    std::map<VarId, MultiPoly> sub{{var_d(), parse_poly("-A^-2 - A^2")}};
    return std::make_pair(std::string("-A^-2 - A^2"),
                          substitute(MultiPoly::var(var_d()), sub).to_string());
  });
  add("localize X[l] -> x[l] + Xloc*y[l]", [] {
    return std::make_pair(parse_poly("x[l] + Xloc*y[l]").to_string(),
                          localize(MultiPoly::var(var_X("l"))).to_string());
  });
  add("localize Y[l] -> y[l] + Yloc*x[l]", [] {
    return std::make_pair(parse_poly("y[l] + Yloc*x[l]").to_string(),
                          localize(MultiPoly::var(var_Y("l"))).to_string());
  });
  add("deleting one of two parallel edges keeps the other", [] {
    ColoredMultigraph left = delete_edge(parallel_pair(), 1);
    ColoredMultigraph expected({1, 2}, {{2, 1, 2, "0", 0}});
    return std::make_pair(std::string("kept"),
                          std::string(left == expected ? "kept" : "changed"));
  });
  add("parallel pair: contracting sets are {} and {1}", [] {
    return std::make_pair(std::string("{} {1}"),
                          splits_to_string(enumerate_contracting_sets(parallel_pair(), {2})));
  });
  add("pointed triangle: the empty set is not contracting", [] {
    bool ok = !is_contracting_set(pointed_triangle(), {3}, {});
    return std::make_pair(std::string("rejected"), std::string(ok ? "rejected" : "accepted"));
  });
  add("pointed triangle: contracting sets are {1} {2} {1,2}", [] {
    return std::make_pair(std::string("{1} {2} {1,2}"),
                          splits_to_string(enumerate_contracting_sets(pointed_triangle(), {3})));
  });
  add("no zero edges: contracting sets of a triangle are its spanning trees", [] {
    ColoredMultigraph tri({1, 2, 3}, {{1, 1, 2, "l", 0}, {2, 2, 3, "l", 0}, {3, 3, 1, "l", 0}});
    return std::make_pair(std::string("{1,2} {1,3} {2,3}"),
                          splits_to_string(enumerate_contracting_sets(tri, {})));
  });

  ProperLabeling phi12{{1, 1}, {2, 2}, {3, 0}};
  ProperLabeling phi21{{1, 2}, {2, 1}, {3, 0}};
  ContractingSplit c1{{1}, {2}, {3}};
  ContractingSplit c2{{2}, {1}, {3}};
  ContractingSplit c12{{1, 2}, {}, {3}};

  add("deleting the larger-labeled edge makes edge 1 a bridge", [=] {
    return std::make_pair(std::string("internally-active"),
                          tag_to_string(internal_activity(pointed_triangle(), c1, phi12, 1)));
  });
  add("with nothing left to delete both tree edges are inactive", [=] {
    std::string got = tag_to_string(internal_activity(pointed_triangle(), c12, phi12, 1)) + " " +
                      tag_to_string(internal_activity(pointed_triangle(), c12, phi12, 2));
    return std::make_pair(std::string("internally-inactive internally-inactive"), got);
  });
  add("a bridge in the contracting set is active whatever the labels", [] {
    ColoredMultigraph path({1, 2, 3}, {{1, 1, 2, "l", 0}, {2, 2, 3, "m", 0}});
    ContractingSplit both{{1, 2}, {}, {}};
    ProperLabeling swapped{{1, 2}, {2, 1}};
    std::string got = tag_to_string(internal_activity(path, both, swapped, 1)) + " " +
                      tag_to_string(internal_activity(path, both, swapped, 2));
    return std::make_pair(std::string("internally-active internally-active"), got);
  });
  add("edge 2 closes no cycle with the contracting set", [=] {
    return std::make_pair(std::string("externally-inactive"),
                          tag_to_string(external_activity(pointed_triangle(), c1, phi12, 2)));
  });
  add("edge 1 never becomes a loop (its label is the smaller)", [=] {
    return std::make_pair(std::string("externally-inactive"),
                          tag_to_string(external_activity(pointed_triangle(), c2, phi12, 1)));
  });
  add("a loop is externally active whatever the labels", [] {
    ColoredMultigraph loop({1}, {{1, 1, 1, "l", 0}});
    ContractingSplit s{{}, {1}, {}};
    return std::make_pair(std::string("externally-active"),
                          tag_to_string(external_activity(loop, s, ProperLabeling{{1, 1}}, 1)));
  });
  add("weight table: X[l], y[m], Y on a loop", [=] {
    ColoredMultigraph loop({1}, {{1, 1, 1, "m", 0}});
    ContractingSplit s{{}, {1}, {}};
    std::string got = edge_weight(pointed_triangle(), phi12, c1, 1).to_string() + " " +
                      edge_weight(pointed_triangle(), phi12, c1, 2).to_string() + " " +
                      edge_weight(loop, ProperLabeling{{1, 1}}, s, 1).to_string();
    return std::make_pair(std::string("X[l] y[m] Y[m]"), got);
  });
  add("pointed triangle expansion, labels 1,2", [=] {
    MultiPoly t = relative_tutte_expansion(pointed_triangle(), {3}, phi12, psi_rank_z);
    MultiPoly expected = parse_poly("x[l]*x[m] + X[l]*y[m]*z + x[m]*y[l]*z");
    return std::make_pair(expected.to_string(), t.to_string());
  });
  add("pointed triangle expansion, labels swapped", [=] {
    MultiPoly t = relative_tutte_expansion(pointed_triangle(), {3}, phi21, psi_rank_z);
    MultiPoly expected = parse_poly("x[l]*x[m] + x[l]*y[m]*z + X[m]*y[l]*z");
    return std::make_pair(expected.to_string(), t.to_string());
  });
  add("recursion base: a + loop is worth Y[+]", [] {
    ColoredMultigraph loop({1}, {{1, 1, 1, "+", 0}});
    return std::make_pair(std::string("Y[+]"),
                          relative_tutte_dc(loop, {}, psi_one).to_string());
  });
  add("recursion base: a + bridge is worth X[+]", [] {
    ColoredMultigraph bridge({1, 2}, {{1, 1, 2, "+", 0}});
    return std::make_pair(std::string("X[+]"),
                          relative_tutte_dc(bridge, {}, psi_one).to_string());
  });
  add("three + edges around two virtual crossings: the bracket", [] {
    MultiPoly b = bracket_from_face_graph(FaceGraph{embedded_trefoil_detour(), 3});
    return std::make_pair(std::string("A^-7 - A^-3 - A^5"), b.to_string());
  });
  add("the same diagram at writhe 3: the Jones polynomial", [] {
    MultiPoly b = bracket_from_face_graph(FaceGraph{embedded_trefoil_detour(), 3});
    return std::make_pair(std::string("t + t^3 - t^4"),
                          jones_display(jones_from_bracket(b, 3)).text);
  });
  return checks;
}

int run_selftest() {
  int failures = 0;
  for (const SelfCheck& check : self_checks()) {
    std::string expected, got;
    try {
      std::tie(expected, got) = check.run();
    } catch (const std::exception& e) {
      got = std::string("exception: ") + e.what();
    }
    if (expected == got) {
      std::cout << "ok   " << check.name << "\n";
    } else {
      std::cout << "FAIL " << check.name << ": expected \"" << expected << "\", got \"" << got
                << "\"\n";
      ++failures;
    }
  }
  std::cout << (failures ? "selftest FAILED\n" : "selftest passed\n");
  return failures ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact relative Tutte polynomials of edge-colored multigraphs,\n"
               "with Kauffman bracket / Jones pipelines for virtual link diagrams"};
  app.require_subcommand(1);

  std::string graph_file, face_file, pd_file;
  std::string zero_edges = "from-color";
  std::string psi_name = "one";
  std::string engine = "expansion";
  std::string pointed_set, method = "direct";
  std::string prob_entries, prob_default;
  bool localized = false, json = false;
  int threads = 1;
  long long writhe_override = 0;

  auto* tutte = app.add_subcommand("tutte", "Relative Tutte polynomial of a colored multigraph");
  tutte->add_option("--graph", graph_file, "graph file (JSON)")->required();
  tutte->add_option("--zero-edges", zero_edges,
                    "'from-color' or a comma-separated list of edge ids");
  tutte->add_option("--psi", psi_name,
                    "residual invariant: knot|one|alpha|chromatic|rank-z|nested-tutte");
  tutte->add_flag("--localized", localized, "substitute X,Y -> localized form");
  tutte->add_option("--engine", engine, "dc (memoized recursion) or expansion")
      ->check(CLI::IsMember({"dc", "expansion"}));
  tutte->add_option("--threads", threads, "worker threads for the expansion engine")
      ->check(CLI::PositiveNumber);
  tutte->add_flag("--json", json, "structured output");

  auto* bracket = app.add_subcommand("bracket", "Kauffman bracket from a face graph");
  bracket->add_option("--face-graph", face_file, "face graph file (JSON with writhe)")
      ->required();
  bracket->add_flag("--json", json, "structured output");

  auto* jones = app.add_subcommand("jones", "Jones polynomial from a face graph");
  jones->add_option("--face-graph", face_file, "face graph file (JSON with writhe)")->required();
  auto* writhe_opt =
      jones->add_option("--writhe", writhe_override, "override the writhe stored in the file");
  jones->add_flag("--json", json, "structured output");

  auto* oracle = app.add_subcommand("oracle", "Kauffman bracket by direct state sum over a PD code");
  oracle->add_option("--pd", pd_file, "PD code file")->required();
  oracle->add_option("--threads", threads, "worker threads over smoothing states")
      ->check(CLI::PositiveNumber);
  oracle->add_flag("--json", json, "structured output");

  auto* zero = app.add_subcommand("zero-order", "Link components of an all-virtual face graph");
  zero->add_option("--graph", graph_file, "graph file (JSON, all edges zero)")->required();
  zero->add_flag("--json", json, "structured output");

  auto* pointed = app.add_subcommand("pointed", "Set-pointed Tutte polynomial in x, y, z");
  pointed->add_option("--graph", graph_file, "graph file (JSON)")->required();
  pointed->add_option("--pointed-set", pointed_set, "comma-separated edge ids (default: empty)");
  pointed->add_option("--method", method, "direct subset sum or via-relative")
      ->check(CLI::IsMember({"direct", "via-relative"}));
  pointed->add_flag("--json", json, "structured output");

  auto* cluster = app.add_subcommand("cluster", "Cluster generating function in kappa");
  cluster->add_option("--graph", graph_file, "graph file (JSON)")->required();
  cluster->add_option("--p", prob_entries, "per-edge survival probabilities, e.g. 1=1/2,2=2/3");
  cluster->add_option("--p-default", prob_default, "probability for unlisted edges");
  cluster->add_flag("--json", json, "structured output");

  auto* selftest = app.add_subcommand("selftest", "Re-check the pinned reference examples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (tutte->parsed()) {
      ColoredMultigraph g = load_graph_file(graph_file);
      std::set<int> H = zero_set_from_option(g, zero_edges);
      PsiMap psi = psi_by_name(psi_name);
      MultiPoly t;
      if (engine == "dc") {
        MemoCache cache(MemoCache::limit_from_env());
        t = relative_tutte_dc(g, H, psi, &cache);
      } else {
        t = relative_tutte_expansion(g, H, choose_labeling(g, H), psi, threads);
      }
      if (localized) t = localize(t);
      emit(json, t.to_string());
    } else if (bracket->parsed()) {
      FaceGraph fg = load_face_graph_file(face_file);
      emit(json, bracket_from_face_graph(fg).to_string());
    } else if (jones->parsed()) {
      FaceGraph fg = load_face_graph_file(face_file);
      long long w = writhe_opt->count() ? writhe_override : fg.writhe;
      MultiPoly b = bracket_from_face_graph(fg);
      JonesDisplay disp = jones_display(jones_from_bracket(b, w));
      if (!disp.in_t)
        std::cerr << "note: quarter powers of t remain; printing in q (t = q^4)\n";
      emit(json, disp.text, {{"variable", disp.in_t ? "t" : "q"}});
    } else if (oracle->parsed()) {
      VirtualDiagram d = load_pd_file(pd_file);
      emit(json, state_sum_bracket(d, threads).to_string());
    } else if (zero->parsed()) {
      ColoredMultigraph g = load_graph_file(graph_file);
      emit(json, std::to_string(zero_order(g)));
    } else if (pointed->parsed()) {
      ColoredMultigraph g = load_graph_file(graph_file);
      std::set<int> A = parse_id_set(pointed_set);
      MultiPoly t = method == "direct" ? set_pointed_direct(g, A)
                                       : set_pointed_via_relative(g, A);
      emit(json, t.to_string());
    } else if (cluster->parsed()) {
      ColoredMultigraph g = load_graph_file(graph_file);
      emit(json, random_cluster_Z(g, probability_map(g, prob_entries, prob_default)).to_string());
    } else if (selftest->parsed()) {
      return run_selftest();
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
