#include "cofib/json_io.hpp"

#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

namespace cofib::io {

  namespace {

    [[noreturn]] void fail(std::string const& where, std::string const& what) {
      throw InputError(where + ": " + what);
    }

    Json const& member(Json const& j, char const* key, std::string const& where) {
      if (!j.is_object() || !j.contains(key)) {
        fail(where, std::string("missing \"") + key + "\"");
      }
      return j.at(key);
    }

    std::string as_string(Json const& j, std::string const& where) {
      if (!j.is_string()) {
        fail(where, "expected a string");
      }
      return j.get<std::string>();
    }

    std::size_t as_index(Json const& j, std::string const& where) {
      if (!j.is_number_integer() || j.get<long long>() < 0) {
        fail(where, "expected a non-negative integer");
      }
      return j.get<std::size_t>();
    }

    Int as_int(Json const& j, std::string const& where) {
      if (!j.is_number_integer()) {
        fail(where, "expected an integer");
      }
      return j.get<Int>();
    }

    IntMatrix matrix_from_json(Json const& j, std::size_t rows, std::size_t cols,
                               std::string const& where) {
      if (!j.is_array() || j.size() != rows) {
        fail(where, "expected " + std::to_string(rows) + " rows");
      }
      IntMatrix m;
      for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols) {
          fail(where, "row " + std::to_string(i) + " should have " + std::to_string(cols) + " entries");
        }
        IntVector row;
        for (auto const& e : j[i]) {
          row.push_back(as_int(e, where));
        }
        m.push_back(std::move(row));
      }
      return m;
    }

    std::size_t object_named(std::vector<std::string> const& objects, std::string const& name,
                             std::string const& where) {
      for (std::size_t i = 0; i < objects.size(); ++i) {
        if (objects[i] == name) {
          return i;
        }
      }
      fail(where, "unknown object \"" + name + "\"");
    }

    std::size_t arrow_named(FinGroupoid const& g, Json const& j, std::string const& where) {
      auto name = as_string(j, where);
      auto a    = g.find_arrow(name);
      if (!a) {
        fail(where, "unknown arrow \"" + name + "\"");
      }
      return *a;
    }

    Elt element_from_json(FinGroup const& g, Json const& j, std::string const& where) {
      if (j.is_number_integer()) {
        auto e = as_index(j, where);
        if (e >= g.order()) {
          fail(where, "element index out of range");
        }
        return e;
      }
      auto name = as_string(j, where);
      for (Elt e = 0; e < g.order(); ++e) {
        if (g.name(e) == name) {
          return e;
        }
      }
      fail(where, "unknown element \"" + name + "\"");
    }

    GroupHom group_map_from_json(FinGroup const& g, FinGroup const& h, Json const& j,
                                 std::string const& where) {
      if (!j.is_array() || j.size() != g.order()) {
        fail(where, "expected " + std::to_string(g.order()) + " images");
      }
      GroupHom f;
      for (std::size_t i = 0; i < j.size(); ++i) {
        f.push_back(element_from_json(h, j[i], where));
      }
      return f;
    }

    Json group_map_to_json(FinGroup const& h, GroupHom const& f) {
      Json out = Json::array();
      for (Elt e : f) {
        out.push_back(h.name(e));
      }
      return out;
    }

    // Fills per-arrow data from the given entries by composition and
    // inversion; data[a] empty means unknown. Returns false if some arrow stays
    // unknown.
    template <class T, class Compose, class Invert>
    bool close_under_composition(FinGroupoid const& g, std::vector<std::optional<T>>& data,
                                 Compose const& compose, Invert const& invert) {
      bool changed = true;
      while (changed) {
        changed = false;
        for (std::size_t a = 0; a < g.arrows.size(); ++a) {
          if (data[a] && !data[g.inverse[a]]) {
            data[g.inverse[a]] = invert(a, *data[a]);
            changed            = true;
          }
        }
        for (std::size_t a = 0; a < g.arrows.size(); ++a) {
          if (!data[a]) {
            continue;
          }
          for (std::size_t y = 0; y < g.objects.size(); ++y) {
            for (std::size_t b : g.hom(g.tgt(a), y)) {
              std::size_t ab = g.mul(a, b);
              if (data[b] && !data[ab]) {
                data[ab] = compose(*data[a], *data[b]);
                changed  = true;
              }
            }
          }
        }
      }
      for (auto const& d : data) {
        if (!d) {
          return false;
        }
      }
      return true;
    }

    std::string letter_name(PresentedGroupoid const& p, Letter l) {
      auto const& id = p.generators[generator_of(l)].id;
      return is_inverse(l) ? id + "^-1" : id;
    }

    Json base_table_json(Base const& b) {
      return b.finite() ? to_json(b.table()) : Json(nullptr);
    }

  }  // namespace

  ValidationFailed::ValidationFailed(std::string const& where, ValidationReport r)
      : InputError(where + ": " + (r.failures.empty() ? std::string("invalid") : r.failures.front())),
        report(std::move(r)) {}

  ////////////////////////////////////////////////////////////////////////
  // Text
  ////////////////////////////////////////////////////////////////////////

  Json parse_json(std::string const& text, std::string const& source) {
    try {
      return Json::parse(text);
    } catch (Json::parse_error const& e) {
      // byte offset -> line and column
      std::size_t line = 1, col = 1;
      for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
          ++line;
          col = 1;
        } else {
          ++col;
        }
      }
      throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(col)
                       + ": JSON parse error: " + e.what());
    }
  }

  Json read_json_file(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw InputError(path + ": cannot open");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json(ss.str(), path);
  }

  std::string dump(Json const& j) {
    return j.dump(2) + "\n";
  }

  ////////////////////////////////////////////////////////////////////////
  // Groups and groupoids
  ////////////////////////////////////////////////////////////////////////

  Json to_json(FinGroup const& g) {
    Json table = Json::array();
    for (Elt a = 0; a < g.order(); ++a) {
      Json row = Json::array();
      for (Elt b = 0; b < g.order(); ++b) {
        row.push_back(g.mul(a, b));
      }
      table.push_back(std::move(row));
    }
    return Json{{"elements", g.names()}, {"table", std::move(table)}};
  }

  FinGroup group_from_json(Json const& j) {
    std::string const where = "group";
    if (j.is_string()) {
      return FinGroup(library_group(j.get<std::string>()));
    }
    if (j.is_object() && j.contains("library")) {
      try {
        return FinGroup(library_group(as_string(j.at("library"), where)));
      } catch (InputError const&) {
        throw;
      } catch (std::exception const& e) {
        fail(where, e.what());
      }
    }
    auto const&              elems = member(j, "elements", where);
    auto const&              tab   = member(j, "table", where);
    std::vector<std::string> names;
    if (!elems.is_array()) {
      fail(where, "\"elements\" must be an array");
    }
    for (auto const& e : elems) {
      names.push_back(as_string(e, where + ".elements"));
    }
    std::vector<std::vector<Elt>> table;
    if (!tab.is_array() || tab.size() != names.size()) {
      fail(where, "\"table\" must have one row per element");
    }
    for (auto const& row : tab) {
      if (!row.is_array() || row.size() != names.size()) {
        fail(where, "\"table\" must be square");
      }
      std::vector<Elt> r;
      for (auto const& e : row) {
        auto x = as_index(e, where + ".table");
        if (x >= names.size()) {
          fail(where, "table entry out of range");
        }
        r.push_back(x);
      }
      table.push_back(std::move(r));
    }
    auto report = validate_group_table(table);
    if (!report.ok()) {
      throw ValidationFailed(where, std::move(report));
    }
    return FinGroup(std::move(names), std::move(table));
  }

  Json to_json(FinGroupoid const& g0) {
    FinGroupoid g = g0;
    canonicalize(g);
    Json arrows = Json::array();
    for (auto const& a : g.arrows) {
      arrows.push_back({{"id", a.id}, {"src", g.objects[a.src]}, {"tgt", g.objects[a.tgt]}});
    }
    Json compose = Json::array();
    for (std::size_t a = 0; a < g.arrows.size(); ++a) {
      for (std::size_t b = 0; b < g.arrows.size(); ++b) {
        if (g.tgt(a) == g.src(b)) {
          compose.push_back({g.arrows[a].id, g.arrows[b].id, g.arrows[g.mul(a, b)].id});
        }
      }
    }
    Json identity = Json::object(), inverse = Json::object();
    for (std::size_t x = 0; x < g.objects.size(); ++x) {
      identity[g.objects[x]] = g.arrows[g.identity[x]].id;
    }
    for (std::size_t a = 0; a < g.arrows.size(); ++a) {
      inverse[g.arrows[a].id] = g.arrows[g.inverse[a]].id;
    }
    return Json{{"objects", g.objects},   {"arrows", std::move(arrows)},
                {"compose", std::move(compose)}, {"identity", std::move(identity)},
                {"inverse", std::move(inverse)}};
  }

  FinGroupoid groupoid_from_json(Json const& j) {
    std::string const where = "groupoid";
    if (!j.is_object()) {
      fail(where, "expected an object");
    }
    auto string_list = [&](Json const& a, std::string const& w) {
      if (!a.is_array()) {
        fail(w, "expected an array");
      }
      std::vector<std::string> out;
      for (auto const& e : a) {
        out.push_back(as_string(e, w));
      }
      return out;
    };
    if (j.contains("group")) {
      std::string object = j.contains("object") ? as_string(j.at("object"), where) : "*";
      return group_groupoid(group_from_json(j.at("group")), object);
    }
    if (j.contains("discrete")) {
      return discrete_groupoid(string_list(j.at("discrete"), where + ".discrete"));
    }
    if (j.contains("codiscrete")) {
      return codiscrete_groupoid(string_list(j.at("codiscrete"), where + ".codiscrete"));
    }
    if (j.contains("connected")) {
      auto const& c = j.at("connected");
      return connected_groupoid(string_list(member(c, "objects", where), where + ".objects"),
                                group_from_json(member(c, "group", where)));
    }
    if (j.contains("coproduct")) {
      std::vector<FinGroupoid> parts;
      for (auto const& p : j.at("coproduct")) {
        parts.push_back(groupoid_from_json(p));
      }
      return coproduct_gpd(parts);
    }

    FinGroupoid g;
    g.objects = string_list(member(j, "objects", where), where + ".objects");
    auto const& arrows = member(j, "arrows", where);
    if (!arrows.is_array()) {
      fail(where, "\"arrows\" must be an array");
    }
    for (std::size_t i = 0; i < arrows.size(); ++i) {
      std::string w = where + ".arrows[" + std::to_string(i) + "]";
      Arrow       a;
      a.id  = as_string(member(arrows[i], "id", w), w);
      a.src = object_named(g.objects, as_string(member(arrows[i], "src", w), w), w);
      a.tgt = object_named(g.objects, as_string(member(arrows[i], "tgt", w), w), w);
      if (g.find_arrow(a.id)) {
        fail(w, "duplicate arrow id \"" + a.id + "\"");
      }
      g.arrows.push_back(std::move(a));
    }
    std::size_t n = g.arrows.size();
    g.compose.assign(n, std::vector<std::size_t>(n, kNone));
    auto const& compose = member(j, "compose", where);
    if (!compose.is_array()) {
      fail(where, "\"compose\" must be an array");
    }
    for (std::size_t i = 0; i < compose.size(); ++i) {
      std::string w = where + ".compose[" + std::to_string(i) + "]";
      auto const& t = compose[i];
      if (!t.is_array() || t.size() != 3) {
        fail(w, "expected [a, b, ab]");
      }
      std::size_t a = arrow_named(g, t[0], w), b = arrow_named(g, t[1], w);
      if (g.tgt(a) != g.src(b)) {
        fail(w, "arrows are not composable");
      }
      if (g.compose[a][b] != kNone) {
        fail(w, "composite given twice");
      }
      g.compose[a][b] = arrow_named(g, t[2], w);
    }
    g.identity.assign(g.objects.size(), kNone);
    auto const& identity = member(j, "identity", where);
    for (auto const& [obj, id] : identity.items()) {
      g.identity[object_named(g.objects, obj, where + ".identity")] =
          arrow_named(g, id, where + ".identity");
    }
    g.inverse.assign(n, kNone);
    auto const& inverse = member(j, "inverse", where);
    for (auto const& [a, b] : inverse.items()) {
      g.inverse[arrow_named(g, Json(a), where + ".inverse")] = arrow_named(g, b, where + ".inverse");
    }
    for (std::size_t x = 0; x < g.objects.size(); ++x) {
      if (g.identity[x] == kNone) {
        fail(where, "no identity at \"" + g.objects[x] + "\"");
      }
    }
    for (std::size_t a = 0; a < n; ++a) {
      if (g.inverse[a] == kNone) {
        fail(where, "no inverse for \"" + g.arrows[a].id + "\"");
      }
      for (std::size_t b = 0; b < n; ++b) {
        if (g.tgt(a) == g.src(b) && g.compose[a][b] == kNone) {
          fail(where, "missing composite of \"" + g.arrows[a].id + "\" and \"" + g.arrows[b].id + "\"");
        }
      }
    }
    auto report = validate_groupoid(g);
    if (!report.ok()) {
      throw ValidationFailed(where, std::move(report));
    }
    return g;
  }

  Json to_json(FinGroupoid const& g, FinGroupoid const& h, GpdMorphism const& f) {
    Json objects = Json::object(), arrows = Json::object();
    for (std::size_t x = 0; x < g.objects.size(); ++x) {
      objects[g.objects[x]] = h.objects[f.on_objects[x]];
    }
    for (std::size_t a = 0; a < g.arrows.size(); ++a) {
      arrows[g.arrows[a].id] = h.arrows[f.on_arrows[a]].id;
    }
    return Json{{"objects", std::move(objects)}, {"arrows", std::move(arrows)}};
  }

  ObjMap object_map_from_json(Json const& j, std::vector<std::string> const& from,
                              std::vector<std::string> const& to) {
    std::string const where = "object map";
    if (!j.is_object()) {
      fail(where, "expected {source: target}");
    }
    ObjMap u(from.size(), kNone);
    for (auto const& [x, y] : j.items()) {
      u[object_named(from, x, where)] = object_named(to, as_string(y, where), where);
    }
    for (std::size_t x = 0; x < from.size(); ++x) {
      if (u[x] == kNone) {
        fail(where, "object \"" + from[x] + "\" is not mapped");
      }
    }
    return u;
  }

  GpdMorphism morphism_from_json(Json const& j, FinGroupoid const& g, FinGroupoid const& h) {
    std::string const where = "morphism";
    GpdMorphism       f;
    f.on_objects = object_map_from_json(member(j, "objects", where), g.objects, h.objects);
    std::vector<std::optional<std::size_t>> arrows(g.arrows.size());
    for (std::size_t x = 0; x < g.objects.size(); ++x) {
      arrows[g.identity[x]] = h.identity[f.on_objects[x]];
    }
    if (j.contains("arrows")) {
      for (auto const& [a, b] : j.at("arrows").items()) {
        arrows[arrow_named(g, Json(a), where + ".arrows")] = arrow_named(h, b, where + ".arrows");
      }
    }
    for (std::size_t a = 0; a < g.arrows.size(); ++a) {
      if (arrows[a] && (h.src(*arrows[a]) != f.on_objects[g.src(a)]
                        || h.tgt(*arrows[a]) != f.on_objects[g.tgt(a)])) {
        fail(where, "arrow \"" + g.arrows[a].id + "\" maps to an arrow with the wrong ends");
      }
    }
    bool complete = close_under_composition<std::size_t>(
        g, arrows, [&](std::size_t a, std::size_t b) { return h.mul(a, b); },
        [&](std::size_t, std::size_t fa) { return h.inverse[fa]; });
    if (!complete) {
      fail(where, "arrow images do not generate the source");
    }
    for (auto const& a : arrows) {
      f.on_arrows.push_back(*a);
    }
    auto report = validate_morphism(g, h, f);
    if (!report.ok()) {
      throw ValidationFailed(where, std::move(report));
    }
    return f;
  }

  ////////////////////////////////////////////////////////////////////////
  // Presentations
  ////////////////////////////////////////////////////////////////////////

  Json word_to_json(PresentedGroupoid const& p, GroupWord const& w) {
    Json out = Json::array();
    for (Letter l : w) {
      out.push_back(letter_name(p, l));
    }
    return out;
  }

  GroupWord word_from_json(PresentedGroupoid const& p, Json const& j) {
    std::string const where = "word";
    if (!j.is_array()) {
      fail(where, "expected an array of generator ids");
    }
    GroupWord w;
    for (auto const& e : j) {
      auto name    = as_string(e, where);
      bool inverse = false;
      if (name.size() > 3 && name.compare(name.size() - 3, 3, "^-1") == 0) {
        inverse = true;
        name.resize(name.size() - 3);
      }
      std::size_t k = kNone;
      for (std::size_t i = 0; i < p.generators.size(); ++i) {
        if (p.generators[i].id == name) {
          k = i;
        }
      }
      if (k == kNone) {
        fail(where, "unknown generator \"" + name + "\"");
      }
      w.push_back(letter(k, inverse));
    }
    return w;
  }

  PgWord path_from_json(PresentedGroupoid const& p, Json const& j, std::size_t start) {
    PgWord w{start, start, word_from_json(p, j)};
    for (Letter l : w.letters) {
      auto const& g = p.generators[generator_of(l)];
      std::size_t s = is_inverse(l) ? g.tgt : g.src;
      if (s != w.tgt) {
        fail("word", "letters are not composable");
      }
      w.tgt = is_inverse(l) ? g.src : g.tgt;
    }
    return w;
  }

  Json to_json(PresentedGroupoid const& p) {
    Json gens = Json::array();
    for (auto const& g : p.generators) {
      gens.push_back({{"id", g.id}, {"src", p.objects[g.src]}, {"tgt", p.objects[g.tgt]}});
    }
    Json rels = Json::array();
    for (auto const& r : p.relators) {
      if (r.letters.empty()) {
        rels.push_back({{"at", p.objects[r.src]}, {"word", Json::array()}});
      } else {
        rels.push_back(word_to_json(p, r.letters));
      }
    }
    return Json{{"objects", p.objects}, {"generators", std::move(gens)}, {"relators", std::move(rels)}};
  }

  PresentedGroupoid presented_from_json(Json const& j) {
    std::string const where = "presentation";
    PresentedGroupoid p;
    for (auto const& o : member(j, "objects", where)) {
      p.objects.push_back(as_string(o, where + ".objects"));
    }
    for (auto const& g : member(j, "generators", where)) {
      std::string w = where + ".generators";
      p.generators.push_back({as_string(member(g, "id", w), w),
                              object_named(p.objects, as_string(member(g, "src", w), w), w),
                              object_named(p.objects, as_string(member(g, "tgt", w), w), w)});
    }
    if (j.contains("relators")) {
      for (auto const& r : j.at("relators")) {
        std::string w = where + ".relators";
        if (r.is_object()) {
          auto at = object_named(p.objects, as_string(member(r, "at", w), w), w);
          p.relators.push_back(path_from_json(p, member(r, "word", w), at));
          continue;
        }
        auto letters = word_from_json(p, r);
        if (letters.empty()) {
          fail(w, "an empty relator needs {\"at\", \"word\"}");
        }
        auto const& g0 = p.generators[generator_of(letters.front())];
        p.relators.push_back(path_from_json(p, r, is_inverse(letters.front()) ? g0.tgt : g0.src));
      }
    }
    auto report = validate_pg(p);
    if (!report.ok()) {
      throw ValidationFailed(where, std::move(report));
    }
    return p;
  }

  Json to_json(Base const& b) {
    Json out = to_json(b.pres());
    out["finite"] = b.finite();
    if (b.finite()) {
      out["arrow_count"] = b.table().arrows.size();
    }
    return out;
  }

  Json to_json(PresentedGroupoid const& source, PresentedGroupoid const& target,
               BaseMorphism const& f) {
    Json objects = Json::object(), gens = Json::object();
    for (std::size_t x = 0; x < source.objects.size(); ++x) {
      objects[source.objects[x]] = target.objects[f.on_objects[x]];
    }
    for (std::size_t k = 0; k < source.generators.size(); ++k) {
      gens[source.generators[k].id] = word_to_json(target, f.on_generators[k].letters);
    }
    return Json{{"objects", std::move(objects)}, {"generators", std::move(gens)}};
  }

  Json to_json(AbelianInvariants const& a) {
    return Json{{"factors", a.factors}, {"free_rank", a.free_rank}};
  }

  Json to_json(ValidationReport const& r) {
    return Json{{"ok", r.ok()}, {"failures", r.failures}};
  }

  ////////////////////////////////////////////////////////////////////////
  // Modules
  ////////////////////////////////////////////////////////////////////////

  Json to_json(GpdModule const& m) {
    Json groups = Json::object(), action = Json::object();
    for (std::size_t x = 0; x < m.base.objects.size(); ++x) {
      groups[m.base.objects[x]] = {{"gens", m.groups[x].gens}, {"rels", m.groups[x].rels}};
    }
    for (std::size_t a = 0; a < m.base.arrows.size(); ++a) {
      action[m.base.arrows[a].id] = m.action[a];
    }
    return Json{{"base", to_json(m.base)}, {"groups", std::move(groups)}, {"action", std::move(action)}};
  }

  GpdModule module_from_json(Json const& j) {
    std::string const where = "module";
    GpdModule         m;
    m.base = groupoid_from_json(member(j, "base", where));
    m.groups.assign(m.base.objects.size(), {});
    std::vector<bool> seen(m.base.objects.size(), false);
    for (auto const& [obj, grp] : member(j, "groups", where).items()) {
      std::string w = where + ".groups." + obj;
      std::size_t x = object_named(m.base.objects, obj, w);
      m.groups[x].gens = as_index(member(grp, "gens", w), w);
      if (grp.contains("rels")) {
        for (auto const& r : grp.at("rels")) {
          m.groups[x].rels.push_back(matrix_from_json(Json::array({r}), 1, m.groups[x].gens, w)[0]);
        }
      }
      seen[x] = true;
    }
    for (std::size_t x = 0; x < seen.size(); ++x) {
      if (!seen[x]) {
        fail(where, "no group at \"" + m.base.objects[x] + "\"");
      }
    }
    m.action.assign(m.base.arrows.size(), {});
    if (j.contains("action")) {
      for (auto const& [id, mat] : j.at("action").items()) {
        std::size_t a = arrow_named(m.base, Json(id), where + ".action");
        m.action[a]   = matrix_from_json(mat, m.groups[m.base.src(a)].gens,
                                         m.groups[m.base.tgt(a)].gens, where + ".action." + id);
      }
    }
    complete_action(m);
    auto report = validate_module(m);
    if (!report.ok()) {
      throw ValidationFailed(where, std::move(report));
    }
    return m;
  }

  Json to_json(ModulePres const& p) {
    auto const& pres = p.base.pres();
    Json        gens = Json::array();
    for (auto const& g : p.generators) {
      gens.push_back({{"id", g.id}, {"at", pres.objects[g.at]}});
    }
    Json rels = Json::array();
    for (auto const& r : p.relations) {
      Json terms = Json::array();
      for (auto const& t : r) {
        terms.push_back({t.coef, p.generators[t.gen].id, word_to_json(pres, t.act.letters)});
      }
      rels.push_back(std::move(terms));
    }
    return Json{{"base", to_json(p.base)}, {"generators", std::move(gens)}, {"relations", std::move(rels)}};
  }

  ////////////////////////////////////////////////////////////////////////
  // Crossed modules
  ////////////////////////////////////////////////////////////////////////

  Json to_json(XModTable const& x) {
    Json fibres = Json::object(), mu = Json::object(), action = Json::object();
    for (std::size_t o = 0; o < x.base.objects.size(); ++o) {
      fibres[x.base.objects[o]] = to_json(x.fibres[o]);
      Json m                    = Json::array();
      for (std::size_t a : x.mu[o]) {
        m.push_back(x.base.arrows[a].id);
      }
      mu[x.base.objects[o]] = std::move(m);
    }
    for (std::size_t a = 0; a < x.base.arrows.size(); ++a) {
      action[x.base.arrows[a].id] = group_map_to_json(x.fibres[x.base.tgt(a)], x.action[a]);
    }
    return Json{{"base", to_json(x.base)}, {"fibres", std::move(fibres)}, {"mu", std::move(mu)},
                {"action", std::move(action)}};
  }

  XModTable xmod_from_json(Json const& j) {
    std::string const where = "xmod";
    XModTable         x;
    x.base = groupoid_from_json(member(j, "base", where));
    std::size_t n = x.base.objects.size();
    x.fibres.assign(n, FinGroup());
    x.mu.assign(n, {});
    std::vector<bool> seen(n, false);
    for (auto const& [obj, grp] : member(j, "fibres", where).items()) {
      std::size_t o = object_named(x.base.objects, obj, where + ".fibres");
      x.fibres[o]    = group_from_json(grp);
      seen[o]        = true;
    }
    for (std::size_t o = 0; o < n; ++o) {
      if (!seen[o]) {
        fail(where, "no fibre at \"" + x.base.objects[o] + "\"");
      }
    }
    auto const& mu = member(j, "mu", where);
    for (std::size_t o = 0; o < n; ++o) {
      std::string w = where + ".mu." + x.base.objects[o];
      auto const& m = member(mu, x.base.objects[o].c_str(), where + ".mu");
      if (!m.is_array() || m.size() != x.fibres[o].order()) {
        fail(w, "expected one arrow per element");
      }
      for (auto const& a : m) {
        x.mu[o].push_back(arrow_named(x.base, a, w));
      }
    }
    std::vector<std::optional<GroupHom>> action(x.base.arrows.size());
    for (std::size_t o = 0; o < n; ++o) {
      GroupHom id(x.fibres[o].order());
      std::iota(id.begin(), id.end(), 0);
      action[x.base.identity[o]] = id;
    }
    if (j.contains("action")) {
      for (auto const& [id, map] : j.at("action").items()) {
        std::size_t a = arrow_named(x.base, Json(id), where + ".action");
        action[a]     = group_map_from_json(x.fibres[x.base.src(a)], x.fibres[x.base.tgt(a)], map,
                                            where + ".action." + id);
      }
    }
    bool complete = close_under_composition<GroupHom>(
        x.base, action,
        [](GroupHom const& f, GroupHom const& g) {
          GroupHom h;
          for (Elt e : f) {
            h.push_back(g[e]);
          }
          return h;
        },
        [&](std::size_t a, GroupHom const& f) {
          GroupHom inv(x.fibres[x.base.src(a)].order(), kNone);
          for (Elt e = 0; e < f.size(); ++e) {
            if (f[e] < inv.size()) {
              inv[f[e]] = e;
            }
          }
          return inv;
        });
    if (!complete) {
      fail(where, "actions do not determine every arrow");
    }
    for (auto& a : action) {
      for (Elt e : *a) {
        if (e == kNone) {
          fail(where, "an action map is not a bijection");
        }
      }
      x.action.push_back(std::move(*a));
    }
    auto report = validate_xmod(x);
    if (!report.ok()) {
      throw ValidationFailed(where, std::move(report));
    }
    return x;
  }

  Json to_json(FpXMod const& x) {
    auto const& pres = x.base.pres();
    Json        gens = Json::array(), boundary = Json::object();
    for (auto const& g : x.generators) {
      gens.push_back({{"id", g.id}, {"at", pres.objects[g.at]}});
      boundary[g.id] = word_to_json(pres, g.boundary.letters);
    }
    Json rels = Json::array();
    for (auto const& r : x.relators) {
      Json letters = Json::array();
      for (auto const& l : r) {
        letters.push_back({x.generators[l.gen].id, word_to_json(pres, l.act.letters), l.inverse ? -1 : 1});
      }
      rels.push_back(std::move(letters));
    }
    return Json{{"base", to_json(x.base)},
                {"generators", std::move(gens)},
                {"boundary", std::move(boundary)},
                {"relators", std::move(rels)}};
  }

  ////////////////////////////////////////////////////////////////////////
  // Diagrams and colimits
  ////////////////////////////////////////////////////////////////////////

  DiagramInput diagram_from_json(Json const& j) {
    std::string const where = "diagram";
    DiagramInput      d;
    d.category = as_string(member(j, "category", where), where + ".category");
    if (d.category != "gpd" && d.category != "mod" && d.category != "xmod") {
      fail(where, "category must be gpd, mod or xmod");
    }
    std::vector<std::string> names;
    auto const&              nodes = member(j, "nodes", where);
    if (!nodes.is_object()) {
      fail(where, "\"nodes\" must be an object");
    }
    for (auto const& [id, node] : nodes.items()) {
      names.push_back(id);
      try {
        if (d.category == "gpd") {
          d.gpd.nodes.push_back(groupoid_from_json(node));
        } else if (d.category == "mod") {
          d.mod.nodes.push_back(module_from_json(node));
        } else {
          d.xmod.nodes.push_back(xmod_from_json(node));
        }
      } catch (ValidationFailed const& e) {
        ValidationReport r;
        r.merge(e.report, where + ".nodes." + id + ": ");
        throw ValidationFailed(where, std::move(r));
      } catch (InputError const& e) {
        fail(where + ".nodes." + id, e.what());
      }
    }
    d.gpd.names = d.mod.names = d.xmod.names = names;
    auto const& edges = member(j, "edges", where);
    if (!edges.is_array()) {
      fail(where, "\"edges\" must be an array");
    }
    for (std::size_t i = 0; i < edges.size(); ++i) {
      std::string w   = where + ".edges[" + std::to_string(i) + "]";
      auto const& e   = edges[i];
      std::size_t src = object_named(names, as_string(member(e, "src", w), w), w);
      std::size_t tgt = object_named(names, as_string(member(e, "tgt", w), w), w);
      auto const& m   = member(e, "morphism", w);
      try {
        if (d.category == "gpd") {
          d.gpd.edges.push_back({src, tgt, morphism_from_json(m, d.gpd.nodes[src], d.gpd.nodes[tgt])});
        } else if (d.category == "mod") {
          auto const& s = d.mod.nodes[src];
          auto const& t = d.mod.nodes[tgt];
          ModEdge     edge{src, tgt, morphism_from_json(m, s.base, t.base), {}};
          auto const& mats = member(m, "matrices", w);
          for (std::size_t x = 0; x < s.base.objects.size(); ++x) {
            edge.map.on_objects.push_back(
                matrix_from_json(member(mats, s.base.objects[x].c_str(), w), s.groups[x].gens,
                                 t.groups[edge.base.on_objects[x]].gens, w + ".matrices"));
          }
          d.mod.edges.push_back(std::move(edge));
        } else {
          auto const& s = d.xmod.nodes[src];
          auto const& t = d.xmod.nodes[tgt];
          XModEdge    edge{src, tgt, morphism_from_json(m, s.base, t.base), {}};
          auto const& maps = member(m, "maps", w);
          for (std::size_t x = 0; x < s.base.objects.size(); ++x) {
            edge.map.on_objects.push_back(
                group_map_from_json(s.fibres[x], t.fibres[edge.base.on_objects[x]],
                                    member(maps, s.base.objects[x].c_str(), w), w + ".maps"));
          }
          d.xmod.edges.push_back(std::move(edge));
        }
      } catch (ValidationFailed const& ex) {
        ValidationReport r;
        r.merge(ex.report, w + ": ");
        throw ValidationFailed(where, std::move(r));
      } catch (InputError const& ex) {
        fail(w, ex.what());
      }
    }
    return d;
  }

  namespace {

    Json colimit_json(GpdDiagram const& d, GpdColimit const& c) {
      Json invariants = Json::object();
      auto inv        = object_invariants(c.base);
      for (std::size_t x = 0; x < c.objects.size(); ++x) {
        invariants[c.objects[x]] = to_json(inv[x]);
      }
      Json legs = Json::array();
      for (std::size_t n = 0; n < d.nodes.size(); ++n) {
        auto src = Base::finite(d.nodes[n]);
        legs.push_back({{"node", d.names[n]}, {"map", to_json(src.pres(), c.pres, c.legs[n])}});
      }
      return Json{{"objects", c.objects},
                  {"presentation", to_json(c.pres)},
                  {"finite", c.base.finite()},
                  {"table", base_table_json(c.base)},
                  {"invariants", std::move(invariants)},
                  {"legs", std::move(legs)},
                  {"functoriality", to_json(c.functoriality)}};
    }

  }  // namespace

  Json to_json(GpdDiagram const& d, GpdColimit const& c) {
    return colimit_json(d, c);
  }

  Json to_json(ModDiagram const& d, ModColimit const& c) {
    Json out       = colimit_json(base_diagram(d), c.base);
    out["module"]  = to_json(c.module);
    Json coinv     = Json::object();
    auto invariant = module_coinvariants(c.module);
    for (std::size_t x = 0; x < invariant.size(); ++x) {
      coinv[c.base.objects[x]] = to_json(invariant[x]);
    }
    out["coinvariants"] = std::move(coinv);
    return out;
  }

  Json to_json(XModDiagram const& d, XModColimit const& c) {
    Json out = colimit_json(base_diagram(d), c.base);
    out["xmod"] = to_json(c.xmod);
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Crossed squares
  ////////////////////////////////////////////////////////////////////////

  Json to_json(CrossedSquare const& s) {
    auto actions = [&](std::vector<GroupHom> const& act, FinGroup const& g) {
      Json out = Json::object();
      for (Elt p = 0; p < s.p.order(); ++p) {
        out[s.p.name(p)] = group_map_to_json(g, act[p]);
      }
      return out;
    };
    Json h = Json::array();
    for (auto const& row : s.h) {
      h.push_back(group_map_to_json(s.l, row));
    }
    return Json{{"L", to_json(s.l)},
                {"M", to_json(s.m)},
                {"N", to_json(s.n)},
                {"P", to_json(s.p)},
                {"lambda", group_map_to_json(s.m, s.lambda)},
                {"lambda_prime", group_map_to_json(s.n, s.lambda_prime)},
                {"mu", group_map_to_json(s.p, s.mu)},
                {"nu", group_map_to_json(s.p, s.nu)},
                {"action_L", actions(s.act_l, s.l)},
                {"action_M", actions(s.act_m, s.m)},
                {"action_N", actions(s.act_n, s.n)},
                {"h", std::move(h)}};
  }

  Json to_json(TensorPresentation const& t, MutualAction const& a) {
    Json gens = Json::array(), boundary = Json::object();
    for (std::size_t k = 0; k < t.pairs.size(); ++k) {
      gens.push_back({{"id", t.names[k]},
                      {"m", a.m.name(t.pairs[k].first)},
                      {"n", a.n.name(t.pairs[k].second)}});
      boundary[t.names[k]] = {{"M", a.m.name(t.to_m[k])}, {"N", a.n.name(t.to_n[k])}};
    }
    Json rels = Json::array();
    for (auto const& r : t.group.relators) {
      Json w = Json::array();
      for (Letter l : r) {
        auto const& id = t.names[generator_of(l)];
        w.push_back(is_inverse(l) ? id + "^-1" : id);
      }
      rels.push_back(std::move(w));
    }
    return Json{{"generators", std::move(gens)}, {"boundary", std::move(boundary)},
                {"relators", std::move(rels)}};
  }

}  // namespace cofib::io
