#include "glt/anticanon.hpp"
#include "glt/io.hpp"
#include "glt/skewgroup.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

using namespace glt;
using io::json;

namespace {

constexpr const char* kVersion = "glt 1.0.0";

enum Exit { kPass = 0, kFail = 1, kUncertified = 2, kInputError = 3 };

struct Options {
  std::string command;
  std::vector<std::string> inputs;
  std::uint64_t seed = 1;
  i64 r_cap = 1000;
  std::optional<i64> degree_bound;
  int workers = 1;
  std::string report, dot, relations;
};

json manifest(const Options& o, const json& extra_caps = json::object()) {
  json caps{{"r_cap", o.r_cap}};
  if (o.degree_bound) caps["degree_bound"] = *o.degree_bound;
  caps.update(extra_caps);
  json outputs = json::array();
  for (auto* p : {&o.report, &o.dot, &o.relations})
    if (!p->empty()) outputs.push_back(*p);
  return json{{"command", o.command}, {"inputs", o.inputs}, {"seed", o.seed},
              {"caps", caps},         {"outputs", outputs}, {"version", kVersion}};
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  require(f.good(), ErrorKind::ParseError, "cannot write " + path);
  f << text;
}

void emit(const Options& o, json doc, const json& extra_caps = json::object()) {
  doc["manifest"] = manifest(o, extra_caps);
  const std::string text = doc.dump(2) + "\n";
  if (o.report.empty())
    std::cout << text;
  else
    write_text(o.report, text);
}

int exit_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::Inconclusive:
    case ErrorKind::CapExceeded:
    case ErrorKind::Uncertifiable:
    case ErrorKind::NonTermination:
    case ErrorKind::DegreeBoundTooSmall:
      return kUncertified;
    default:
      return kInputError;
  }
}

// A weighted-surface file, or a bundle/search file whose "surface" key names one.
wps::WeightedSurface load_surface(const std::string& path, const json& j) {
  if (j.contains("surface") && j.at("surface").is_string())
    return io::weighted_from_json(io::read_json_file(io::resolve(path, j.at("surface").get<std::string>())));
  return io::weighted_from_json(j);
}

anticanon::CubicGroupModel cubic_model(const json& j) {
  const std::string g = j.value("group", std::string("Gm"));
  require(g == "Gm" || g == "Ga", ErrorKind::ParseError, "nine points: group must be Gm or Ga");
  return {g == "Gm" ? anticanon::GroupKind::Gm : anticanon::GroupKind::Ga};
}

std::vector<Q> cubic_params(const json& j) {
  std::vector<Q> out;
  for (auto& p : j.at("params")) out.push_back(parse_q(p.is_string() ? p.get<std::string>() : p.dump()));
  return out;
}

json nine_point_doc(const json& j) {
  auto model = cubic_model(j);
  auto params = cubic_params(j);
  auto declared = io::points_from_json(j, 9);
  const Q g = anticanon::nine_point_class(model, params);
  auto derived = anticanon::derived_incidences(model, params, declared);
  const auto v = anticanon::almost_general_9(model, params, declared);
  json coll = json::array(), conics = json::array();
  for (auto& t : derived.collinear_triples) coll.push_back({t[0] + 1, t[1] + 1, t[2] + 1});
  for (auto& s : derived.conic_sextuples) {
    json row = json::array();
    for (int i : s) row.push_back(i + 1);
    conics.push_back(row);
  }
  json doc{{"group", anticanon::group_kind_name(model.kind)},
           {"class", q_str(g)},
           {"torsion_order", anticanon::torsion_order(model, g)},
           {"collinear", coll},
           {"conics", conics},
           {"verdict", anticanon::verdict_name(v)}};
  if (v == anticanon::Verdict::AlmostGeneral)
    doc["description"] = "blowup of P2 at 9 points in almost general position";
  return doc;
}

json classification_doc(const wps::WeightedSurface& W) {
  auto c = wps::classify(W);
  json doc{{"type", wps::fano_type_name(c.type)}, {"square", q_str(c.square)}, {"witness", c.witness}};
  try {
    doc["kodaira_negative"] = wps::kodaira_negative(W) ? "yes" : "no";
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Inconclusive) throw;
    doc["kodaira_negative"] = "inconclusive";
  }
  json warnings = json::array();
  for (auto& w : wps::weight_sanity(W)) warnings.push_back({{"code", w.code}, {"message", w.message}});
  doc["warnings"] = warnings;
  return doc;
}

int cmd_classify(const Options& o) {
  const std::string& path = o.inputs.at(0);
  json j = io::read_json_file(path);
  json doc;
  if (j.contains("params")) {
    doc = nine_point_doc(j);
    const auto v = anticanon::almost_general_9(cubic_model(j), cubic_params(j), io::points_from_json(j, 9));
    if (v != anticanon::Verdict::OutsideModel) {
      auto S = anticanon::nine_point_surface(cubic_model(j), cubic_params(j), io::points_from_json(j, 9));
      doc["classification"] = classification_doc(wps::unweighted(S));
    }
  } else {
    doc = classification_doc(load_surface(path, j));
  }
  emit(o, doc);
  return kPass;
}

int cmd_cohom(const Options& o, const std::vector<std::string>& classes, bool oracle) {
  const std::string& path = o.inputs.at(0);
  auto W = load_surface(path, io::read_json_file(path));
  cohom::Memo memo;
  json rows = json::array();
  for (auto& text : classes) {
    auto a = io::parse_class(W, text);
    auto v = wps::ext_dims(W, wps::zero(W), a, &memo);
    json row{{"class", io::lclass_json(W, a)},
             {"sheaf", W.base.class_str(wps::hom_sheaf(W, wps::zero(W), a))},
             {"cohomology", io::cohomology_json(v)}};
    if (oracle) {
      require(W.weighted.empty(), ErrorKind::PreconditionViolated, "the oracle needs an unweighted surface");
      auto ov = cohom::cohomology_oracle(W.base, a.pic, o.seed);
      row["oracle"] = io::cohomology_json(ov);
      row["oracle_agrees"] = ov.h0 == v.h0 && ov.h1 == v.h1 && ov.h2 == v.h2;
    }
    rows.push_back(row);
  }
  emit(o, json{{"results", rows}});
  return kPass;
}

struct CheckInputs {
  wps::WeightedSurface W;
  io::BundleFile bundle;
  std::optional<tilting::GenerationScript> script;
};

CheckInputs load_check(const Options& o, const std::string& config, const std::string& script_path) {
  const std::string& bpath = o.inputs.at(0);
  json bj = io::read_json_file(bpath);
  wps::WeightedSurface W = config.empty() ? load_surface(bpath, bj) : io::weighted_from_json(io::read_json_file(config));
  auto B = io::bundle_from_json(bj, W);
  std::optional<tilting::GenerationScript> script;
  std::string sp = script_path;
  if (sp.empty() && B.script_path) sp = io::resolve(bpath, *B.script_path);
  if (!sp.empty()) script = io::script_from_json(io::read_json_file(sp), W, sp);
  return {std::move(W), std::move(B), std::move(script)};
}

int check_exit(const tilting::CheckReport& R) {
  using tilting::Verdict;
  if (R.all_pass()) return kPass;
  if (R.partial.verdict == Verdict::Fail || R.hereditary.verdict == Verdict::Fail || !R.euler.unimodular() ||
      !R.euler.size_matches() || (R.dp && R.dp->verdict == Verdict::Fail))
    return kFail;
  if (!R.generation.script.empty() && !R.generation.verified) return kFail;
  return kUncertified;
}

int cmd_check(Options o, const std::string& config, const std::string& script_path) {
  if (!config.empty()) o.inputs.push_back(config);
  if (!script_path.empty()) o.inputs.push_back(script_path);
  auto in = load_check(o, config, script_path);
  tilting::Context C(in.W);
  auto R = tilting::check(C, in.bundle.candidate, in.script ? &*in.script : nullptr, o.r_cap);
  json doc = io::report_json(C, in.bundle.candidate, R);
  doc["label"] = in.bundle.label;
  emit(o, doc);
  return check_exit(R);
}

int cmd_quiver(Options o, const std::string& config) {
  if (!config.empty()) o.inputs.push_back(config);
  auto in = load_check(o, config, "");
  tilting::Context C(in.W);
  std::vector<wps::LClass> lines;
  std::vector<std::string> names;
  for (size_t i = 0; i < in.bundle.candidate.summands.size(); ++i) {
    const auto& s = in.bundle.candidate.summands[i];
    require(s.kind == tilting::Summand::Kind::Line, ErrorKind::PreconditionViolated,
            "quiver extraction needs line-bundle summands");
    lines.push_back(s.line);
    names.push_back(i < in.bundle.vertex_names.size() ? in.bundle.vertex_names[i] : C.name(s));
  }
  auto q = coxquiver::quiver(C.engine(), lines, names, o.degree_bound);
  const std::string dot = coxquiver::to_dot(q), rel = coxquiver::relations_text(q);
  if (!o.dot.empty()) write_text(o.dot, dot);
  if (!o.relations.empty()) write_text(o.relations, rel);
  json arrows = json::array(), relations = json::array();
  for (auto& a : q.arrows)
    arrows.push_back({{"from", q.vertices[a.from]}, {"to", q.vertices[a.to]}, {"label", a.label},
                      {"element", C.engine().format(a.element)}});
  for (auto& r : q.relations)
    relations.push_back({{"from", q.vertices[r.from]}, {"to", q.vertices[r.to]}, {"text", r.text}});
  emit(o, json{{"label", in.bundle.label},
               {"vertices", q.vertices},
               {"arrows", arrows},
               {"relations", relations},
               {"degree_bound", q.degree_bound},
               {"hilbert_ok", q.hilbert_ok},
               {"ring", coxquiver::strategy_name(C.engine().ring().strategy)},
               {"dot", dot}});
  return q.hilbert_ok ? kPass : kUncertified;
}

// {"surface": "...", "box": {"pic": [[lo, hi], ...], "frac": [[lo, hi], ...]},
//  "max_summands": n, "require": ["0"], "enumeration_cap": n}
int cmd_search(const Options& o) {
  const std::string& path = o.inputs.at(0);
  json j = io::read_json_file(path);
  auto W = load_surface(path, j);
  tilting::Context C(W);
  tilting::SearchBox box;
  try {
    const json& b = j.at("box");
    for (auto& r : b.at("pic")) box.pic.emplace_back(r.at(0).get<i64>(), r.at(1).get<i64>());
    if (b.contains("frac"))
      for (auto& r : b.at("frac")) box.frac.emplace_back(r.at(0).get<i64>(), r.at(1).get<i64>());
  } catch (const json::exception& e) {
    fail(ErrorKind::ParseError, std::string("search box: ") + e.what());
  }
  tilting::SearchOptions opt;
  opt.max_summands = j.value("max_summands", size_t{0});
  opt.enumeration_cap = j.value("enumeration_cap", size_t{4096});
  for (auto& r : j.value("require", json::array())) opt.require.push_back(io::parse_class(W, r.get<std::string>()));
  opt.workers = o.workers;
  opt.r_cap = o.r_cap;
  auto out = tilting::search(C, box, opt);
  json results = json::array();
  for (auto& r : out.results) {
    json rep = io::report_json(C, r.candidate, r.report);
    results.push_back(rep);
  }
  emit(o,
       json{{"box_size", out.box_size},
            {"target_size", out.target_size},
            {"cliques", out.cliques},
            {"results", results}},
       json{{"box_size", out.box_size}, {"enumeration_cap", opt.enumeration_cap}});
  return kPass;
}

int cmd_ninepoints(const Options& o) {
  json doc = nine_point_doc(io::read_json_file(o.inputs.at(0)));
  emit(o, doc);
  return doc["verdict"] == "OutsideModel" ? kUncertified : kPass;
}

int cmd_skew(Options o, const std::string& emit_path) {
  const std::string& src = o.inputs.at(0);
  json j;
  std::string base;
  if (std::ifstream(src).good()) {
    j = io::read_json_file(src);
    base = src;
  } else {
    j = skewgroup::builtin_cover_json(src);
    base = std::string(GLT_DATA_DIR) + "/covers/" + src + ".json";
  }
  if (!emit_path.empty()) {
    json out = j;
    auto& b = out["upstairs_bundle"];
    if (b.is_object() && b.contains("script"))
      b["script"] = std::filesystem::absolute(io::resolve(base, b["script"].get<std::string>())).lexically_normal().string();
    write_text(emit_path, out.dump(2) + "\n");
  }
  auto M = skewgroup::cover_from_json(j, base);
  auto R = skewgroup::induced_tilting(M);
  json doc = skewgroup::induced_report_json(M, R);
  bool star = true;
  try {
    auto s = skewgroup::star_condition(M);
    star = s.holds;
    doc["star_condition"] = {{"holds", s.holds}, {"points", s.witnesses}};
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::MissingData) throw;
    doc["star_condition"] = {{"holds", "unknown"}, {"reason", e.what()}};
  }
  emit(o, doc);
  if (!R.all_pass() || !star) return kFail;
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tilting bundles on weighted projective surfaces"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--seed", o.seed, "Seed for randomized oracles")->capture_default_str();
  app.add_option("--r-cap", o.r_cap, "Largest twist r examined by the hereditary check")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--degree-bound", o.degree_bound, "Degree bound for quiver extraction")->check(CLI::PositiveNumber);
  app.add_option("--workers", o.workers, "Worker threads for search")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--report", o.report, "Write the report here instead of stdout");

  std::string input, config, script, emit_cover;
  std::vector<std::string> classes;
  bool oracle = false;

  auto* classify = app.add_subcommand("classify", "Fano type and Kodaira sign of a surface or nine-point input");
  classify->add_option("input", input, "Weighted surface or nine-point file")->required();

  auto* cohom = app.add_subcommand("cohom", "Cohomology of line bundles");
  cohom->add_option("input", input, "Weighted surface file")->required();
  cohom->add_option("classes", classes, "Class expressions")->required();
  cohom->add_flag("--oracle", oracle, "Compare with the interpolation oracle");

  auto* check = app.add_subcommand("check", "Tilting and 2-hereditary checks for a bundle");
  check->add_option("bundle", input, "Bundle file")->required();
  check->add_option("--config", config, "Weighted surface (default: the bundle's 'surface')");
  check->add_option("--script", script, "Generation script (default: the bundle's 'script')");

  auto* quiver = app.add_subcommand("quiver", "Quiver with relations of a line-bundle sum");
  quiver->add_option("bundle", input, "Bundle file")->required();
  quiver->add_option("--config", config, "Weighted surface (default: the bundle's 'surface')");
  quiver->add_option("--dot", o.dot, "Write Graphviz output here");
  quiver->add_option("--relations", o.relations, "Write the relations here");

  auto* search = app.add_subcommand("search", "Search for line-bundle tilting candidates in a box");
  search->add_option("spec", input, "Search file")->required();

  auto* nine = app.add_subcommand("ninepoints", "Almost general position of nine points on a singular cubic");
  nine->add_option("input", input, "Nine-point file")->required();

  auto* skew = app.add_subcommand("skew", "Induced tilting bundles for an abelian cover");
  skew->add_option("cover", input, "Cover file or builtin name")->required();
  skew->add_option("--emit", emit_cover, "Write the cover description here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kInputError;
  }

  o.command = app.get_subcommands().front()->get_name();
  o.inputs = {input};
  try {
    if (*classify) return cmd_classify(o);
    if (*cohom) return cmd_cohom(o, classes, oracle);
    if (*check) return cmd_check(o, config, script);
    if (*quiver) return cmd_quiver(o, config);
    if (*search) return cmd_search(o);
    if (*nine) return cmd_ninepoints(o);
    if (*skew) return cmd_skew(o, emit_cover);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    json doc{{"error", {{"kind", error_kind_name(e.kind())}, {"message", e.what()}}}};
    if (!o.report.empty()) emit(o, doc);
    return exit_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
