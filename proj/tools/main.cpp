// orbfold: batch front end for the folding calculus. Subcommands load JSON
// objects from --in (or stdin), apply operations and write deterministic JSON
// or DOT to --out (or stdout). Exit codes: 0 pass, 1 assertion failure,
// 2 usage or schema error.

#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "orbfold/io.hpp"
#include "orbfold/moves.hpp"
#include "orbfold/scenarios.hpp"

using namespace orbfold;

namespace {

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

unsigned long harness_seed() {
  if (const char* env = std::getenv("ORBIFOLD_FOLDS_SEED")) return std::stoul(env);
  return 20260810UL;
}

int run(int argc, char** argv) {
  CLI::App app{"folding calculus for graph-of-groups morphisms over 2-orbifolds"};
  app.require_subcommand(1);
  std::string in = "-", out = "-";

  // ---- orbifold ----
  auto* orb = app.add_subcommand("orbifold", "presentations and predicates");
  orb->require_subcommand(1);
  auto* present = orb->add_subcommand("present", "print the fundamental group presentation");
  std::string spec_arg;
  present->add_option("--spec", spec_arg, "orbifold spec as inline JSON");
  present->add_option("--in", in, "input file (JSON spec), - for stdin");
  present->add_option("--out", out, "output file, - for stdout");
  present->callback([&] {
    Json j = spec_arg.empty() ? load_json(in) : Json::parse(spec_arg);
    OrbifoldSpec spec = spec_from_json(j);
    Json res = to_json(presentation(spec));
    res["small"] = is_small(spec);
    res["sufficiently_large"] = is_sufficiently_large(spec);
    write_output(out, dump(res));
  });

  // ---- gog ----
  auto* gog = app.add_subcommand("gog", "graphs of groups and paths");
  gog->require_subcommand(1);
  auto* gcheck = gog->add_subcommand("check", "validate a graph of groups");
  gcheck->add_option("--in", in, "input file");
  gcheck->add_option("--out", out, "output file");
  gcheck->callback([&] {
    GraphOfGroups g = gog_from_json(load_json(in));
    Json res;
    res["ok"] = true;
    res["connected"] = g.graph.is_connected();
    res["betti"] = g.graph.first_betti();
    if (g.trivial_edge_groups() && g.graph.is_connected()) {
      RankTorsion rt = rank_tn(g, *g.graph.vertices().begin());
      res["pi1_rank"] = rt.rank;
      res["pi1_torsion"] = rt.torsion;
    }
    write_output(out, dump(res));
  });
  auto* gnorm = gog->add_subcommand("normalize", "normal form of an A-path");
  gnorm->add_option("--in", in, "input file: {gog, path}");
  gnorm->add_option("--out", out, "output file");
  gnorm->callback([&] {
    Json j = load_json(in);
    GraphOfGroups g = gog_from_json(j.at("gog"), "/gog");
    APath p = path_from_json(j.at("path"), "/path");
    validate_path(g, p);
    write_output(out, dump(to_json(normalize(g, p))));
  });
  auto* gdot = gog->add_subcommand("dot", "DOT export of the underlying graph");
  gdot->add_option("--in", in, "input file");
  gdot->add_option("--out", out, "output file");
  gdot->callback([&] { write_output(out, to_dot(gog_from_json(load_json(in)))); });

  // ---- fold ----
  auto* fld = app.add_subcommand("fold", "morphism checks and moves");
  fld->require_subcommand(1);
  auto* fcheck = fld->add_subcommand("check", "foldedness verdicts and witnesses");
  fcheck->add_option("--in", in, "morphism file");
  fcheck->add_option("--out", out, "output file");
  fcheck->callback([&] {
    std::vector<Violation> extra;
    GGMorphism m = morphism_from_json(load_json(in), &extra);
    Json res;
    res["violations"] = Json::array();
    for (const Violation& v : check_morphism(m))
      res["violations"].push_back(Json{{"code", v.code}, {"where", v.where}, {"detail", v.detail}});
    for (const Violation& v : extra)
      res["violations"].push_back(Json{{"code", v.code}, {"where", v.where}, {"detail", v.detail}});
    res["folded"] = to_json(is_folded(m));
    VertexId base = *m.source.graph.vertices().begin();
    res["complexity"] = to_json(complexity(m, base));
    write_output(out, dump(res));
  });
  auto* fapply = fld->add_subcommand("apply", "apply a move and print the result");
  std::string move, vertex_arg, edge_arg, edge2_arg, elem_arg;
  long cexp = 0;
  bool trace = false;
  fapply->add_option("--move", move, "a0|a1|a2|ia|iiia|vertex|fold")->required();
  fapply->add_option("--in", in, "morphism file");
  fapply->add_option("--out", out, "output file");
  fapply->add_option("--vertex", vertex_arg, "vertex for a0/vertex moves");
  fapply->add_option("--edge", edge_arg, "edge for a1/a2/ia/iiia/fold");
  fapply->add_option("--edge2", edge2_arg, "second edge for ia/iiia/fold");
  fapply->add_option("--element", elem_arg, "group element as JSON word");
  fapply->add_option("--exp", cexp, "edge group exponent for a1");
  fapply->add_flag("--trace", trace, "also emit the comparison morphism");
  fapply->callback([&] {
    GGMorphism m = morphism_from_json(load_json(in));
    auto elem = [&] { return elem_arg.empty() ? FpcWord() : word_from_json(Json::parse(elem_arg)); };
    Json res;
    if (move == "a0") {
      res["morphism"] = to_json(move_a0(m, vertex_arg, elem()));
    } else if (move == "a1") {
      res["morphism"] = to_json(move_a1(m, edge_arg, cexp));
    } else if (move == "a2") {
      MoveResult r = move_a2(m, edge_arg, elem());
      res["morphism"] = to_json(r.morphism);
      if (trace) res["sigma"] = to_json(*r.sigma);
    } else if (move == "ia" || move == "iiia") {
      MoveResult r = move == "ia" ? elementary_fold_ia(m, edge_arg, edge2_arg)
                                  : elementary_fold_iiia(m, edge_arg, edge2_arg);
      res["morphism"] = to_json(r.morphism);
      if (trace) res["sigma"] = to_json(*r.sigma);
    } else if (move == "vertex") {
      MoveResult r = vertex_morphism(m, vertex_arg);
      res["morphism"] = to_json(r.morphism);
      if (trace) res["sigma"] = to_json(*r.sigma);
    } else if (move == "fold") {
      DoubleCosetResult dc = f1_membership(m, edge_arg, edge2_arg);
      if (dc.verdict != Verdict::Yes) throw error("no (F1) witness found for these edges");
      F1Witness w{edge_arg, edge2_arg, *dc.b, dc.c};
      VertexId base = vertex_arg.empty() ? *m.source.graph.vertices().begin() : vertex_arg;
      FoldOutcome r = fold(m, edge_arg, edge2_arg, w, base);
      res["morphism"] = to_json(r.morphism);
      if (trace) res["sigma"] = to_json(r.sigma);
      res["kind"] = r.kind == FoldOutcome::Kind::IA ? "IA" : "IIIA";
    } else {
      throw error("unknown move " + move);
    }
    write_output(out, dump(res));
  });

  // ---- nielsen ----
  auto* nie = app.add_subcommand("nielsen", "Nielsen transformations and search");
  nie->require_subcommand(1);
  auto* nsearch = nie->add_subcommand("search", "bounded equivalence search");
  std::string a_file, b_file;
  std::size_t max_norm = 0, max_states = 1000000;
  nsearch->add_option("--a", a_file, "first tuple file {group, entries}")->required();
  nsearch->add_option("--b", b_file, "second tuple file")->required();
  nsearch->add_option("--max-norm", max_norm, "norm cap (default: input norm + 8)");
  nsearch->add_option("--max-states", max_states, "state cap");
  nsearch->add_option("--out", out, "output file");
  nsearch->callback([&] {
    Json ja = load_json(a_file), jb = load_json(b_file);
    FpcOracle o{group_from_json(ja.at("group"), "/group")};
    auto ta = tuple_from_json(ja), tb = tuple_from_json(jb);
    for (auto& w : ta) w = canonical(o.group, w);
    for (auto& w : tb) w = canonical(o.group, w);
    SearchResult res = equivalent_bounded(o, ta, tb, {max_norm, max_states});
    Json j;
    j["verdict"] = res.found ? "equivalent" : "unknown";
    if (res.found) j["trace"] = to_json(res.trace);
    write_output(out, dump(j));
  });
  auto* nreduce = nie->add_subcommand("reduce", "search a reducing trace");
  nreduce->add_option("--a", a_file, "tuple file")->required();
  nreduce->add_option("--max-norm", max_norm, "norm cap");
  nreduce->add_option("--out", out, "output file");
  nreduce->callback([&] {
    Json ja = load_json(a_file);
    FpcOracle o{group_from_json(ja.at("group"), "/group")};
    auto ta = tuple_from_json(ja);
    for (auto& w : ta) w = canonical(o.group, w);
    SearchResult res = reducible_witness(o, ta, {max_norm, max_states});
    Json j;
    j["verdict"] = res.found ? "reducible" : "unknown";
    if (res.found) j["trace"] = to_json(res.trace);
    write_output(out, dump(j));
  });

  // ---- decorated ----
  auto* dec = app.add_subcommand("decorated", "the small-orbifold engine");
  dec->require_subcommand(1);
  std::string vertex_opt = "u1";
  bool as_dot = false;
  auto* dcheck = dec->add_subcommand("check", "validate and summarize");
  dcheck->add_option("--in", in, "decorated morphism file");
  dcheck->add_option("--out", out, "output file");
  dcheck->callback([&] {
    DecoratedMorphism dm = decorated_from_json(load_json(in));
    Json res;
    res["ok"] = true;
    res["decompositions"] = Json::array();
    for (const auto& d : dm.decomposition)
      res["decompositions"].push_back(
          Json{{"i", d.i}, {"z", d.z}, {"a", to_json(d.a)}, {"shift", d.shift}});
    auto sq = folds_squares(dm);
    res["folds_squares"] = sq.kind == SquareFoldReport::Kind::None       ? "none"
                           : sq.kind == SquareFoldReport::Kind::SelfFold ? "self-fold"
                                                                         : "peripheral-fold";
    write_output(out, dump(res));
  });
  auto* dlocal = dec->add_subcommand("local-graph", "local graph at a vertex");
  dlocal->add_option("--in", in, "decorated morphism file");
  dlocal->add_option("--out", out, "output file");
  dlocal->add_option("--vertex", vertex_opt, "vertex (default u1)");
  dlocal->add_flag("--dot", as_dot, "emit DOT instead of JSON");
  dlocal->callback([&] {
    DecoratedMorphism dm = decorated_from_json(load_json(in));
    LocalGraph lg = local_graph(dm, vertex_opt);
    write_output(out, as_dot ? to_dot(lg) : dump(to_json(lg)));
  });
  auto* dtame = dec->add_subcommand("tame", "vertex injectivity, collapsibility, squares");
  dtame->add_option("--in", in, "decorated morphism file");
  dtame->add_option("--out", out, "output file");
  dtame->callback([&] {
    DecoratedMorphism dm = decorated_from_json(load_json(in));
    TameReport rep = is_tame(dm);
    Json res;
    res["tame"] = rep.tame;
    res["vertex_injective"] = rep.vertex_injective;
    res["collapsible"] = rep.collapsible;
    res["reasons"] = rep.reasons;
    write_output(out, dump(res));
  });
  auto* dcover = dec->add_subcommand("extract-cover", "almost orbifold cover descriptor");
  dcover->add_option("--in", in, "decorated morphism file");
  dcover->add_option("--out", out, "output file");
  dcover->add_option("--vertex", vertex_opt, "exceptional vertex (default u1)");
  dcover->callback([&] {
    DecoratedMorphism dm = decorated_from_json(load_json(in));
    write_output(out, dump(to_json(extract_almost_cover(dm, vertex_opt))));
  });
  auto* dadj = dec->add_subcommand("adjoin-unfold", "the adjoined-finite-subgroup unfold");
  dadj->add_option("--in", in, "decorated morphism file");
  dadj->add_option("--out", out, "output file");
  dadj->add_option("--vertex", vertex_opt, "exceptional vertex (default u1)");
  dadj->callback([&] {
    DecoratedMorphism dm = decorated_from_json(load_json(in));
    AdjoinUnfoldResult r = adjoin_unfold(dm, vertex_opt);
    Json res;
    res["new_edge"] = r.new_edge;
    res["first_edge"] = r.first_edge;
    res["morphism"] = to_json(r.dm);
    write_output(out, dump(res));
  });

  // ---- scenario ----
  auto* sc = app.add_subcommand("scenario", "scripted example pipelines");
  sc->require_subcommand(1);
  auto* slist = sc->add_subcommand("list", "list registered scenarios");
  slist->callback([&] {
    std::string text;
    for (const std::string& n : scenario_names()) text += n + "\n";
    write_output(out, text);
  });
  auto* srun = sc->add_subcommand("run", "run a scenario and print pass/fail lines");
  std::string scenario_name;
  srun->add_option("name", scenario_name, "scenario name")->required();
  srun->add_option("--out", out, "output file");
  srun->callback([&] {
    ScenarioReport rep = run_scenario(scenario_name, harness_seed());
    std::string text = "scenario " + rep.name + "\n";
    for (const auto& [what, ok] : rep.checks)
      text += std::string(ok ? "PASS" : "FAIL") + " - " + what + "\n";
    text += rep.all_passed() ? "RESULT pass\n" : "RESULT fail\n";
    write_output(out, text);
    if (!rep.all_passed()) std::exit(1);
  });

  CLI11_PARSE(app, argc, argv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const orbfold::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
