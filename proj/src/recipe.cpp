#include <fstream>
#include <sstream>

#include "symframes/error.hpp"
#include "symframes/pipeline.hpp"

namespace symframes {

using nlohmann::json;

namespace {

std::pair<long, long> parse_phase(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer() || j[0] <= 0)
    throw Error(ErrorCode::ParseError, where + ": phase must be [n, k] for exp(2 pi i k / n)");
  return {j[0].get<long>(), j[1].get<long>()};
}

Cyclotomic phase_value(std::pair<long, long> p) { return Cyclotomic::root_of_unity(p.first, p.second); }

json exact(const Cyclotomic& z) { return {{"exact", z.to_string()}, {"decimal", z.decimal(15)}}; }

ExplicitCode named_code(const std::string& name) {
  if (name == "e7") return construct_E7_shell();
  if (name == "phi3") return construct_phi3();
  if (name == "d7") return construct_D7_scaled();
  throw Error(ErrorCode::ParseError, "unknown explicit code '" + name + "' (expected e7, phi3 or d7)");
}

template <class T>
T field(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw Error(ErrorCode::ParseError, where + ": missing '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, where + ": bad '" + key + "': " + e.what());
  }
}

}  // namespace

Recipe parse_recipe(const json& j) {
  Recipe r;
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "recipe must be a JSON object");
  r.name = field<std::string>(j, "name", "recipe");
  const std::string where = "recipe " + r.name;
  r.mode = j.value("mode", "code");
  if (r.mode != "code" && r.mode != "lines") throw Error(ErrorCode::ParseError, where + ": mode must be code or lines");
  r.explicit_code = j.value("explicit", false);
  r.realify = j.value("realify", false);
  r.lift = j.value("lift", "");
  if (!r.lift.empty() && r.lift != "r11") throw Error(ErrorCode::ParseError, where + ": unknown lift " + r.lift);
  r.dimension = j.value("dimension", 0L);
  if (j.contains("reference_coherence")) r.reference_coherence = j["reference_coherence"].get<double>();
  if (!r.explicit_code) {
    r.group = field<std::string>(j, "group", where);
    const auto& c = field<json>(j, "character", where);
    r.chi = {field<long>(c, "degree", where + " character"), c.value("index", std::size_t{0})};
    for (const auto& f : j.value("frames", json::array())) {
      RecipeFrame fr{field<std::string>(f, "name", where + " frame"), field<std::string>(f, "subgroup", where), {}};
      const auto& nu = field<json>(f, "nu", where + " frame " + fr.name);
      fr.nu.order = field<long>(nu, "order", where + " frame " + fr.name);
      if (nu.contains("index")) fr.nu.index = nu["index"].get<std::size_t>();
      r.frames.push_back(fr);
    }
    for (const auto& c : j.value("crosses", json::array())) {
      RecipeCross cr{field<std::string>(c, "first", where + " cross"), field<std::string>(c, "second", where), {}};
      if (c.contains("phase") && c["phase"] != "scan") cr.phase = parse_phase(c["phase"], where + " cross");
      r.crosses.push_back(cr);
    }
  }
  for (const auto& b : j.value("blocks", json::array())) {
    RecipeBlock bl{field<std::string>(b, "name", where + " block"), field<std::string>(b, "source", where), {1, 0}};
    if (b.contains("phase")) bl.phase = parse_phase(b["phase"], where + " block " + bl.name);
    r.blocks.push_back(bl);
  }
  if (r.mode == "code" && r.blocks.empty()) throw Error(ErrorCode::ParseError, where + ": no blocks");
  return r;
}

Recipe load_recipe(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read recipe " + path.string());
  try {
    return parse_recipe(json::parse(in));
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
}

RecipeResult run_recipe(Context& ctx, const Recipe& r, bool verify, std::optional<long> dimension) {
  RecipeResult out;
  out.recipe = r;
  const long dim = dimension.value_or(r.dimension);

  if (r.explicit_code) {
    std::vector<ExplicitCode> parts;
    for (const auto& b : r.blocks) parts.push_back(scale(named_code(b.source), phase_value(b.phase)));
    out.code = concat(parts);
    check_explicit(*out.code);
    ExactMatrix g = gram(*out.code);
    out.gram = r.realify ? realify(g) : g;
    if (verify) out.kissing = verify_kissing(*out.gram, dim);
    return out;
  }

  std::vector<FrameSource> sources;
  auto source_index = [&](const std::string& name) {
    for (std::size_t i = 0; i < sources.size(); ++i)
      if (sources[i].name == name) return i;
    throw Error(ErrorCode::ParseError, "recipe " + r.name + ": unknown frame " + name);
  };
  for (const auto& f : r.frames) {
    auto row = ctx.row(r.group, r.chi, f.subgroup, f.nu);
    sources.push_back({f.name, homogenize(row)});
  }
  std::vector<CrossSource> crosses;
  for (const auto& c : r.crosses) {
    std::size_t a = source_index(c.first), b = source_index(c.second);
    auto row = ctx.cross(r.group, r.chi, r.frames[a].subgroup, r.frames[a].nu, r.frames[b].subgroup, r.frames[b].nu);
    crosses.push_back({a, b, row, c.phase ? phase_value(*c.phase) : Cyclotomic(1)});
  }

  if (r.mode == "lines") {
    out.lines = line_union(sources, crosses);
    out.coherence = coherence(out.lines->angles, r.reference_coherence);
    return out;
  }

  std::vector<BlockSpec> blocks;
  for (const auto& b : r.blocks) blocks.push_back({b.name, source_index(b.source), phase_value(b.phase)});
  for (std::size_t k = 0; k < crosses.size(); ++k) {
    if (r.crosses[k].phase) continue;
    auto choice = resolve_cross_phase(sources, blocks, crosses[k], default_phase_candidates(sources, blocks, crosses[k]));
    crosses[k].phase = choice.phase;
    out.chosen_phases.push_back({r.crosses[k].first + "/" + r.crosses[k].second, choice.phase});
  }
  GramAssembly a = assemble_union(sources, blocks, crosses);
  if (r.realify) a = realify(a);
  if (r.lift == "r11") a = build_code_R11(a);
  out.gram = a.gram;
  out.assembly = std::move(a);
  if (verify) out.kissing = verify_kissing(*out.gram, dim ? dim : out.assembly->dimension);
  return out;
}

json to_json(const KissingReport& r) {
  json values = json::array();
  for (const auto& v : r.entry_values) values.push_back(v.to_string());
  return {{"vectors", r.vector_count},
          {"dimension", r.dimension},
          {"max_real_part", exact(r.max_real_part)},
          {"max_pair", {r.max_pair.first, r.max_pair.second}},
          {"unit_diagonal", r.unit_diagonal},
          {"distinct", r.distinct},
          {"duplicate_pair", r.distinct ? json() : json{r.duplicate_pair.first, r.duplicate_pair.second}},
          {"within_bound", r.within_bound},
          {"min_eigenvalue", r.min_eigenvalue},
          {"tolerance", r.tolerance},
          {"numerical_rank", r.numerical_rank},
          {"psd", r.psd},
          {"entry_values", values},
          {"valid", r.valid}};
}

json to_json(const LineSystemSummary& s) {
  json angles = json::array();
  for (const auto& a : s.angles) {
    json x = {{"abs_squared", a.abs_squared.to_string()},
              {"modulus", a.modulus ? json(a.modulus->to_string()) : json()},
              {"decimal", std::sqrt(a.abs_squared.to_complex().real())},
              {"pairs", a.count}};
    angles.push_back(x);
  }
  return {{"lines", s.line_count},
          {"vectors", s.vector_count},
          {"line_stabilizer_order", s.line_stabilizer_order},
          {"vector_stabilizer_order", s.vector_stabilizer_order},
          {"gon_order", s.gon_order},
          {"angles", angles}};
}

json to_json(const TwistedSphericalRow& row, const std::optional<HomogenizedFrame>& frame) {
  json cells = json::array();
  for (const auto& c : row.cells) {
    json x = exact(c.value);
    x["representative"] = c.representative.cycle_string();
    x["size"] = c.size;
    x["abs_squared"] = abs_squared(c.value).to_string();
    cells.push_back(x);
  }
  json out = {{"group_order", row.group->order()},
              {"subgroup_order", row.subgroup->order()},
              {"dimension", row.dimension},
              {"nu_order", row.nu.order},
              {"multiplicity", row.multiplicity},
              {"reducible", row.reducible},
              {"cells", cells}};
  if (frame) out["homogenized"] = to_json(frame->summary);
  return out;
}

json to_json(const CrossGramRow& row) {
  json cells = json::array();
  for (std::size_t c = 0; c < row.cells.size(); ++c) {
    json x = row.exact_values ? exact(row.cells[c].value) : json{{"raw", row.cells[c].value.to_string()}};
    x["representative"] = row.cells[c].representative.cycle_string();
    x["size"] = row.cells[c].size;
    x["abs_squared"] = row.abs_squared[c].to_string();
    cells.push_back(x);
  }
  return {{"dimension", row.dimension},
          {"a", row.group->element(row.a).cycle_string()},
          {"exact_values", row.exact_values},
          {"known_modulo_phase", row.known_modulo_phase},
          {"scale_squared", row.scale_squared.to_string()},
          {"cells", cells}};
}

json to_json(const CharacterTable& t) {
  json classes = json::array();
  for (const auto& c : t.classes->classes())
    classes.push_back({{"representative", c.representative.cycle_string()},
                       {"size", c.members.size()},
                       {"element_order", c.element_order}});
  json rows = json::array();
  for (const auto& r : t.rows) {
    json row = json::array();
    for (const auto& v : r.values()) row.push_back(exact(v));
    rows.push_back(row);
  }
  return {{"order", t.group->order()}, {"prime", t.prime}, {"classes", classes}, {"rows", rows}};
}

json group_info_json(Context& ctx, const std::string& name) {
  const auto& e = ctx.entry(name);
  json gens = json::array();
  for (const auto& g : e.generators) gens.push_back(g.cycle_string());
  json subs = json::array();
  for (const auto& s : e.subgroups) {
    auto nus = ctx.linear(name, s.name);
    json orders = json::array();
    for (const auto& nu : nus) orders.push_back(nu.order);
    subs.push_back({{"name", s.name}, {"order", s.order}, {"note", s.note}, {"linear_character_orders", orders}});
  }
  auto G = ctx.group(name);
  return {{"name", e.name},           {"degree", e.degree},
          {"order", G->order()},      {"provenance", e.provenance},
          {"generators", gens},       {"classes", ctx.table(name).classes->count()},
          {"subgroups", subs}};
}

json to_json(const RecipeResult& res) {
  json out = {{"recipe", res.recipe.name}, {"mode", res.recipe.mode}};
  if (!res.chosen_phases.empty()) {
    json p = json::object();
    for (const auto& [k, v] : res.chosen_phases) p[k] = v.to_string();
    out["chosen_phases"] = p;
  }
  if (res.assembly) {
    json blocks = json::array();
    for (const auto& b : res.assembly->blocks)
      blocks.push_back({{"name", b.name}, {"phase", b.phase.to_string()}, {"offset", b.offset}, {"count", b.count}});
    out["blocks"] = blocks;
    out["real"] = res.assembly->real;
    out["duplicates"] = res.assembly->duplicates.size();
  }
  if (res.gram) out["vectors"] = res.gram->rows();
  if (res.kissing) out["kissing"] = to_json(*res.kissing);
  if (res.lines) out["lines"] = to_json(*res.lines);
  if (res.coherence) {
    out["coherence"] = {{"abs_squared", res.coherence->abs_squared.to_string()},
                        {"exact", res.coherence->exact ? json(res.coherence->exact->to_string()) : json()},
                        {"decimal", res.coherence->value},
                        {"reference", res.coherence->reference ? json(*res.coherence->reference) : json()}};
  }
  return out;
}

std::string export_coordinates(const RecipeResult& res) {
  std::ostringstream out;
  if (res.code) {
    const auto& code = res.recipe.realify ? realify(*res.code) : *res.code;
    for (const auto& v : code.vectors) {
      json line = json::array();
      for (const auto& x : v) line.push_back(x.to_json());
      out << line.dump() << '\n';
    }
    return out.str();
  }
  if (!res.gram) throw Error(ErrorCode::Unsupported, "recipe " + res.recipe.name + " has no vectors to export");
  long d = res.kissing ? res.kissing->dimension : res.assembly->dimension;
  for (const auto& v : embed_vectors_from_gram(*res.gram, d)) {
    json line = json::array();
    for (const auto& x : v) {
      if (res.assembly->real) line.push_back({{"decimal", x.real()}});
      else line.push_back({{"decimal_re", x.real()}, {"decimal_im", x.imag()}});
    }
    out << line.dump() << '\n';
  }
  return out.str();
}

}  // namespace symframes
