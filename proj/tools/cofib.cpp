// Command-line front end. Exit codes: 0 success, 1 a check failed, 2 input
// error, 3 budget exhausted.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "cofib/json_io.hpp"
#include "cofib/scenario.hpp"

using namespace cofib;
using io::Json;

namespace {

  constexpr int kOk       = 0;
  constexpr int kFailed   = 1;
  constexpr int kInput    = 2;
  constexpr int kExhausted = 3;

  struct Options {
    std::size_t bound  = 10000;
    std::string out;
    std::string format = "text";

    RewriteBound rewrite() const {
      RewriteBound b;
      b.max_steps       = bound;
      b.max_enumeration = bound;
      return b;
    }
  };

  // What a command produced: canonical JSON, a human summary and an exit code.
  struct Outcome {
    Json        json;
    std::string text;
    int         code = kOk;
  };

  int emit(Options const& opt, Outcome const& o) {
    if (!opt.out.empty()) {
      std::ofstream f(opt.out);
      if (!f) {
        std::cerr << "error: cannot write " << opt.out << "\n";
        return kInput;
      }
      f << io::dump(o.json);
    }
    if (opt.format == "json") {
      std::cout << io::dump(o.json);
    } else {
      std::cout << o.text;
    }
    return o.code;
  }

  // "x=y" pairs.
  std::pair<std::string, std::string> split_pair(std::string const& s, char sep = '=') {
    auto k = s.find(sep);
    if (k == std::string::npos) {
      throw InputError("expected name" + std::string(1, sep) + "value, got \"" + s + "\"");
    }
    return {s.substr(0, k), s.substr(k + 1)};
  }

  std::vector<std::string> split_list(std::string const& s) {
    std::vector<std::string> out;
    std::stringstream        ss(s);
    std::string              item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) {
        out.push_back(item);
      }
    }
    return out;
  }

  ObjMap object_map(std::vector<std::string> const& sends, std::vector<std::string> const& from,
                    std::vector<std::string> const& to) {
    Json j = Json::object();
    for (auto const& s : sends) {
      auto [x, y] = split_pair(s);
      j[x]        = y;
    }
    return io::object_map_from_json(j, from, to);
  }

  // Groups are library names or JSON files.
  FinGroup group_arg(std::string const& s) {
    for (auto const& g : small_groups()) {
      if (g.name == s) {
        return g.group;
      }
    }
    return io::group_from_json(io::read_json_file(s));
  }

  std::string invariants_line(std::vector<std::string> const& objects,
                              std::vector<AbelianInvariants> const& inv) {
    std::string out;
    for (std::size_t x = 0; x < inv.size(); ++x) {
      out += "  " + objects[x] + ": " + to_string(inv[x]) + "\n";
    }
    return out;
  }

  Json invariants_json(std::vector<std::string> const& objects,
                       std::vector<AbelianInvariants> const& inv) {
    Json out = Json::object();
    for (std::size_t x = 0; x < inv.size(); ++x) {
      out[objects[x]] = io::to_json(inv[x]);
    }
    return out;
  }

  std::string report_text(ValidationReport const& r) {
    if (r.ok()) {
      return "valid\n";
    }
    std::string out = "invalid (" + std::to_string(r.failures.size()) + " failures)\n";
    for (auto const& f : r.failures) {
      out += "  " + f + "\n";
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Commands
  ////////////////////////////////////////////////////////////////////////

  Outcome cmd_validate(std::string const& file, std::string kind) {
    Json j = io::read_json_file(file);
    if (kind == "auto") {
      kind = j.contains("category")   ? "diagram"
             : j.contains("fibres")   ? "xmod"
             : j.contains("groups")   ? "module"
             : j.contains("generators") ? "presented"
             : (j.contains("elements") || j.contains("library")) ? "group"
                                                                   : "gpd";
    }
    ValidationReport report;
    try {
      if (kind == "gpd") {
        io::groupoid_from_json(j);
      } else if (kind == "group") {
        io::group_from_json(j);
      } else if (kind == "presented") {
        io::presented_from_json(j);
      } else if (kind == "module") {
        io::module_from_json(j);
      } else if (kind == "xmod") {
        io::xmod_from_json(j);
      } else if (kind == "diagram") {
        auto d = io::diagram_from_json(j);
        report = d.category == "gpd"   ? validate_diagram(d.gpd)
                 : d.category == "mod" ? validate_diagram(d.mod)
                                       : validate_diagram(d.xmod);
      } else {
        throw InputError("unknown kind \"" + kind + "\"");
      }
    } catch (io::ValidationFailed const& e) {
      report = e.report;
    }
    return {Json{{"kind", kind}, {"report", io::to_json(report)}}, kind + ": " + report_text(report),
            report.ok() ? kOk : kFailed};
  }

  Outcome cmd_pullback(std::string const& gpd, std::string const& map, std::string const& module,
                       std::string const& xmod, std::string const& morphism) {
    if (!gpd.empty()) {
      if (map.empty()) {
        throw InputError("pullback --gpd needs --map");
      }
      auto g = io::groupoid_from_json(io::read_json_file(gpd));
      Json m = io::read_json_file(map);
      std::vector<std::string> j;
      for (auto const& o : m.at("objects")) {
        j.push_back(o.get<std::string>());
      }
      auto u  = io::object_map_from_json(m.at("map"), j, g.objects);
      auto pb = pullback_groupoid(j, u, g);
      return {Json{{"groupoid", io::to_json(pb.groupoid)},
                   {"projection", io::to_json(pb.groupoid, g, pb.projection)}},
              "pullback groupoid: " + std::to_string(pb.groupoid.objects.size()) + " objects, "
                  + std::to_string(pb.groupoid.arrows.size()) + " arrows\n"};
    }
    if (morphism.empty()) {
      throw InputError("pullback needs --gpd with --map, or --module/--xmod with --morphism");
    }
    Json mj = io::read_json_file(morphism);
    auto src = io::groupoid_from_json(mj.at("source"));
    if (!module.empty()) {
      auto n = io::module_from_json(io::read_json_file(module));
      auto v = io::morphism_from_json(mj, src, n.base);
      auto m = module_pullback(src, v, n);
      return {Json{{"module", io::to_json(m)}},
              "pulled back module:\n" + invariants_line(src.objects, module_invariants(m))};
    }
    if (!xmod.empty()) {
      auto n = io::xmod_from_json(io::read_json_file(xmod));
      auto f = io::morphism_from_json(mj, src, n.base);
      auto x = xmod_pullback(src, f, n);
      std::string text = "pulled back crossed module, fibre orders:";
      for (auto const& g : x.fibres) {
        text += " " + std::to_string(g.order());
      }
      return {Json{{"xmod", io::to_json(x)}}, text + "\n"};
    }
    throw InputError("pullback --morphism needs --module or --xmod");
  }

  Outcome cmd_induce_module(std::string const& morphism, std::string const& module) {
    auto m  = io::module_from_json(io::read_json_file(module));
    Json mj = io::read_json_file(morphism);
    auto t  = io::groupoid_from_json(mj.at("target"));
    auto v  = io::morphism_from_json(mj, m.base, t);
    auto p  = module_induce(v, t, m);
    auto inv = module_simplify(p);
    auto s   = structural_report(p);
    return {Json{{"module", io::to_json(p)}, {"invariants", invariants_json(t.objects, inv)}},
            "induced module: " + std::to_string(s.generators) + " generators, "
                + std::to_string(s.relations) + " relations\n" + invariants_line(t.objects, inv)};
  }

  Outcome cmd_induce_xmod(std::string const& morphism, std::string const& xmod,
                          RewriteBound const& b) {
    auto x  = io::xmod_from_json(io::read_json_file(xmod));
    Json mj = io::read_json_file(morphism);
    auto t  = io::groupoid_from_json(mj.at("target"));
    auto f  = io::morphism_from_json(mj, x.base, t);
    auto p  = xmod_induce(f, t, x);
    Json out{{"xmod", io::to_json(p)}, {"table", nullptr}};
    std::string text = "induced crossed module: " + std::to_string(p.generators.size())
                       + " generators, " + std::to_string(p.relators.size()) + " relators\n";
    try {
      if (auto r = bounded_realize(p, b)) {
        out["table"] = io::to_json(r->table);
        text += "fibre orders:";
        for (auto const& g : r->table.fibres) {
          text += " " + std::to_string(g.order());
        }
        text += "\n";
      } else {
        text += "realization: unknown within the budget\n";
      }
    } catch (TooLarge const& e) {
      text += std::string("realization: ") + e.what() + "\n";
    }
    return {out, text};
  }

  Base base_from_file(std::string const& file) {
    Json j = io::read_json_file(file);
    if (j.contains("generators")) {
      return Base::presented(io::presented_from_json(j));
    }
    if (j.is_string() || j.contains("library") || j.contains("elements")) {
      return Base::finite(io::groupoid_from_json(Json{{"group", j}}));
    }
    return Base::finite(io::groupoid_from_json(j));
  }

  // Arrow ids for finite bases, generator ids otherwise.
  PgWord path_arg(Base const& base, std::string const& word, std::size_t at) {
    auto items = split_list(word);
    if (base.finite()) {
      auto const& t = base.table();
      std::size_t a = t.identity[at];
      for (auto const& id : items) {
        std::size_t c = t.arrow_index(id);
        if (t.src(c) != t.tgt(a)) {
          throw InputError("word \"" + word + "\" is not a path");
        }
        a = t.mul(a, c);
      }
      return base.arrow_word(a);
    }
    return io::path_from_json(base.pres(), Json(items), at);
  }

  Outcome cmd_free_module(std::string const& base_file, std::vector<std::string> const& gens) {
    auto                     base = base_from_file(base_file);
    std::vector<std::string> b;
    std::vector<std::size_t> t;
    for (auto const& g : gens) {
      auto [id, obj] = split_pair(g, ':');
      b.push_back(id);
      t.push_back(io::object_map_from_json(Json{{"x", obj}}, {"x"}, base.pres().objects)[0]);
    }
    auto p    = free_module(b, t, base);
    Json out  = {{"module", io::to_json(p)}};
    auto s    = structural_report(p);
    std::string text = "free module: " + std::to_string(s.generators) + " generators, "
                       + std::to_string(s.relations) + " relations\n";
    if (base.finite()) {
      auto inv          = module_simplify(p);
      out["invariants"] = invariants_json(base.pres().objects, inv);
      text += invariants_line(base.pres().objects, inv);
    }
    return {out, text};
  }

  Outcome cmd_free_xmod(std::string const& base_file, std::vector<std::string> const& cells) {
    auto                      base = base_from_file(base_file);
    std::vector<XRelatorSpec> w;
    for (auto const& c : cells) {
      auto [id, rest]  = split_pair(c, ':');
      auto [obj, word] = split_pair(rest, ':');
      std::size_t at   = io::object_map_from_json(Json{{"x", obj}}, {"x"}, base.pres().objects)[0];
      w.push_back({id, at, path_arg(base, word, at)});
    }
    auto x   = free_xmod(w, base);
    auto ab  = peiffer_abelianize(x);
    auto s   = structural_report(ab.module);
    Json out = {{"xmod", io::to_json(x)}, {"abelianization", io::to_json(ab.module)}};
    std::string text = "free crossed module: " + std::to_string(x.generators.size())
                       + " generators\nabelianization: " + std::to_string(s.generators)
                       + " generators, " + std::to_string(s.relations) + " relations\n";
    if (ab.module.base.finite()) {
      auto objects = ab.module.base.pres().objects;
      auto inv     = module_simplify(ab.module);
      out["invariants"] = invariants_json(objects, inv);
      text += invariants_line(objects, inv);
    }
    return {out, text};
  }

  Outcome cmd_universal(std::string const& gpd, std::string const& objects,
                        std::vector<std::string> const& sends, RewriteBound const& b) {
    auto g = io::groupoid_from_json(io::read_json_file(gpd));
    auto j = split_list(objects);
    auto u = object_map(sends, g.objects, j);
    auto w = universal_morphism(j, u, g);
    auto p = w.presentation();
    std::vector<AbelianInvariants> inv;
    for (std::size_t x = 0; x < j.size(); ++x) {
      inv.push_back(pg_abelian_invariants(p, x));
    }
    Json out{{"presentation", io::to_json(p)},
             {"unit", io::to_json(Base::finite(g).pres(), p, w.unit_morphism())},
             {"invariants", invariants_json(j, inv)},
             {"table", nullptr}};
    std::string text = "universal morphism: " + std::to_string(p.generators.size())
                       + " generators, " + std::to_string(p.relators.size()) + " relators\n"
                       + invariants_line(j, inv);
    if (auto r = pg_realize(p, b)) {
      out["table"] = io::to_json(r->groupoid);
      text += "finite: " + std::to_string(r->groupoid.arrows.size()) + " arrows\n";
    } else {
      text += "not realized within the budget\n";
    }
    return {out, text};
  }

  Outcome cmd_quotient(std::string const& gpd, std::string const& arrows) {
    auto g = io::groupoid_from_json(io::read_json_file(gpd));
    std::vector<std::size_t> r;
    for (auto const& id : split_list(arrows)) {
      r.push_back(g.arrow_index(id));
    }
    auto n = normal_closure(g, r);
    auto q = quotient_groupoid(g, n);
    return {Json{{"groupoid", io::to_json(q.groupoid)},
                 {"projection", io::to_json(g, q.groupoid, q.projection)}},
            "quotient: " + std::to_string(q.groupoid.objects.size()) + " objects, "
                + std::to_string(q.groupoid.arrows.size()) + " arrows\n"};
  }

  Outcome cmd_colim(std::string const& diagram, RewriteBound const& b) {
    auto d = io::diagram_from_json(io::read_json_file(diagram));
    Json out;
    GpdColimit const* base = nullptr;
    GpdColimit        g;
    ModColimit        m;
    XModColimit       x;
    if (d.category == "gpd") {
      g    = colimit_gpd(d.gpd, b);
      out  = io::to_json(d.gpd, g);
      base = &g;
    } else if (d.category == "mod") {
      m    = colimit_mod(d.mod, b);
      out  = io::to_json(d.mod, m);
      base = &m.base;
    } else {
      x    = colimit_xmod(d.xmod, b);
      out  = io::to_json(d.xmod, x);
      base = &x.base;
    }
    std::string text = "colimit: " + std::to_string(base->objects.size()) + " objects\n"
                       + invariants_line(base->objects, object_invariants(base->base));
    if (base->base.finite()) {
      text += "finite: " + std::to_string(base->base.table().arrows.size()) + " arrows\n";
    }
    text += "functoriality: " + report_text(base->functoriality);
    return {out, text, base->functoriality.ok() ? kOk : kFailed};
  }

  Outcome cmd_check_cocartesian(std::string const& gpd, std::string const& objects,
                                std::vector<std::string> const& sends, std::string const& target,
                                std::string const& psi_file, std::size_t max_arrows) {
    auto z = io::groupoid_from_json(io::read_json_file(gpd));
    auto j = split_list(objects);
    auto u = object_map(sends, z.objects, j);
    auto battery = cocartesian_battery(z, j, u, max_arrows);
    CocartesianCert cert;
    if (target.empty()) {
      auto w = universal_morphism(j, u, z);
      cert   = check_cocartesian(z, Base::presented(w.presentation()), w.unit_morphism(), battery);
    } else {
      auto y = io::groupoid_from_json(io::read_json_file(target));
      if (y.objects != j) {
        throw InputError("--target must have exactly the objects given by --objects");
      }
      if (psi_file.empty()) {
        throw InputError("--target needs --psi");
      }
      auto psi = io::morphism_from_json(io::read_json_file(psi_file), z, y);
      if (psi.on_objects != u) {
        throw InputError("--psi is not over the object map");
      }
      auto fz = Base::finite(z), fy = Base::finite(y);
      cert    = check_cocartesian(z, fy, base_morphism(fz, fy, psi), battery);
    }
    Json out{{"pass", cert.pass},
             {"checked", cert.checked},
             {"factorizations", cert.factorizations},
             {"witness", cert.witness ? Json(*cert.witness) : Json(nullptr)}};
    std::string text = std::string(cert.pass ? "cocartesian" : "not cocartesian") + " against "
                       + std::to_string(cert.checked) + " battery items\n";
    if (cert.witness) {
      text += "witness: item " + std::to_string(*cert.witness) + " with "
              + std::to_string(cert.factorizations[*cert.witness]) + " factorizations\n";
    }
    return {out, text, cert.pass ? kOk : kFailed};
  }

  Outcome cmd_retract(std::string const& gpd, std::string const& xmod, std::string const& object) {
    if (!xmod.empty()) {
      auto x  = io::xmod_from_json(io::read_json_file(xmod));
      auto x0 = x.base.object_index(object);
      auto r  = retract_xmod_to_vertex(x, x0);
      return {Json{{"vertex", io::to_json(r.vertex)}},
              "retracted crossed module at " + object + ": fibre of order "
                  + std::to_string(r.vertex.fibres[0].order()) + "\n"};
    }
    auto g  = io::groupoid_from_json(io::read_json_file(gpd));
    auto x0 = g.object_index(object);
    auto r  = spanning_tree_retraction(g, x0);
    Json tau = Json::object(), images = Json::object();
    for (std::size_t x = 0; x < g.objects.size(); ++x) {
      tau[g.objects[x]] = g.arrows[r.tau[x]].id;
    }
    std::size_t failures = 0;
    for (std::size_t c = 0; c < g.arrows.size(); ++c) {
      images[g.arrows[c].id] = r.vertex.group.name(r.r[c]);
      failures += reconstruct(g, r, c) != c;
    }
    return {Json{{"vertex_group", io::to_json(r.vertex.group)},
                 {"tau", std::move(tau)},
                 {"r", std::move(images)},
                 {"reconstruction_failures", failures}},
            "retraction to " + object + ": vertex group of order "
                + std::to_string(r.vertex.group.order()) + ", reconstruction "
                + (failures == 0 ? "holds" : "fails") + " on every arrow\n",
            failures == 0 ? kOk : kFailed};
  }

  Outcome cmd_d_complete(std::string const& mu, std::string const& nu) {
    auto a = io::xmod_from_json(io::read_json_file(mu));
    auto b = io::xmod_from_json(io::read_json_file(nu));
    auto s = d_completion(a, b);
    auto r = validate_xsq_partial(s);
    return {Json{{"square", io::to_json(s)}, {"report", io::to_json(r)}},
            "D-completion: L of order " + std::to_string(s.l.order()) + "\n" + report_text(r),
            r.ok() ? kOk : kFailed};
  }

  Outcome cmd_tensor(std::string const& m, std::string const& n, std::string const& mu,
                     std::string const& nu, RewriteBound const& b) {
    MutualAction a;
    if (!mu.empty() || !nu.empty()) {
      if (mu.empty() || nu.empty()) {
        throw InputError("tensor needs both --mu and --nu");
      }
      a = mutual_action(io::xmod_from_json(io::read_json_file(mu)),
                        io::xmod_from_json(io::read_json_file(nu)));
    } else {
      if (m.empty() || n.empty()) {
        throw InputError("tensor needs --m and --n, or --mu and --nu");
      }
      a = trivial_mutual_action(group_arg(m), group_arg(n));
    }
    auto t  = tensor_presentation(a);
    auto st = tensor_structure(t);
    Json out{{"presentation", io::to_json(t, a)},
             {"abelianization", io::to_json(st.abelianization)},
             {"order", nullptr}};
    std::string text = "tensor product: " + std::to_string(st.generators) + " generators, "
                       + std::to_string(st.relators) + " relators\nabelianization: "
                       + to_string(st.abelianization) + "\n";
    auto table = tensor_bounded(a, b);
    if (!table) {
      return {out, text + "order: unknown within the budget\n", kExhausted};
    }
    out["order"] = table->group.order();
    out["group"] = io::to_json(table->group);
    return {out, text + "order: " + std::to_string(table->group.order()) + "\n"};
  }

  Outcome cmd_scenario(std::string const& name, bool list, RewriteBound const& b) {
    if (list || name.empty()) {
      Json        out = Json::array();
      std::string text;
      for (auto const& s : scenarios()) {
        out.push_back({{"name", s.name}, {"description", s.description}});
        text += s.name + "  " + s.description + "\n";
      }
      return {out, text};
    }
    auto r = run_scenario(name, b);
    Json checks = Json::array();
    std::string text = "scenario " + r.name + ": " + r.description + "\n";
    for (auto const& c : r.checks) {
      checks.push_back({{"name", c.name}, {"pass", c.pass}, {"expected", c.expected}, {"actual", c.actual}});
      text += std::string(c.pass ? "  ok    " : "  FAIL  ") + c.name;
      if (!c.pass) {
        text += "\n        expected: " + c.expected + "\n        actual:   " + c.actual;
      }
      text += "\n";
    }
    if (r.unknown) {
      text += "  budget exhausted\n";
    }
    text += r.pass() ? "PASS\n" : "FAIL\n";
    Json out{{"scenario", r.name}, {"pass", r.pass()}, {"unknown", r.unknown},
             {"checks", std::move(checks)}, {"result", r.result}};
    return {out, text, r.unknown ? kExhausted : (r.pass() ? kOk : kFailed)};
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Groupoids, modules and crossed modules over groupoids: pullbacks, induced "
               "structures, colimits and crossed squares"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--bound", opt.bound, "Rewrite and enumeration budget")->capture_default_str();
  app.add_option("--out", opt.out, "Write canonical JSON here");
  app.add_option("--format", opt.format, "Standard output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.fallthrough();

  std::function<Outcome()> run;

  auto* validate = app.add_subcommand("validate", "Check a structure against its axioms");
  std::string v_file, v_kind = "auto";
  validate->add_option("file", v_file)->required();
  validate->add_option("--kind", v_kind)
      ->check(CLI::IsMember({"auto", "gpd", "group", "presented", "module", "xmod", "diagram"}));
  validate->callback([&] { run = [&] { return cmd_validate(v_file, v_kind); }; });

  auto*       pullback = app.add_subcommand("pullback", "Pull back along an object map or morphism");
  std::string p_gpd, p_map, p_module, p_xmod, p_morphism;
  pullback->add_option("--gpd", p_gpd);
  pullback->add_option("--map", p_map, "{\"objects\": [..], \"map\": {j: object}}");
  pullback->add_option("--module", p_module);
  pullback->add_option("--xmod", p_xmod);
  pullback->add_option("--morphism", p_morphism, "morphism with \"source\" groupoid");
  pullback->callback([&] {
    run = [&] { return cmd_pullback(p_gpd, p_map, p_module, p_xmod, p_morphism); };
  });

  auto*       induce_module = app.add_subcommand("induce-module", "Induced module along a morphism");
  std::string im_morphism, im_module;
  induce_module->add_option("--morphism", im_morphism, "morphism with \"target\" groupoid")->required();
  induce_module->add_option("--module", im_module)->required();
  induce_module->callback([&] { run = [&] { return cmd_induce_module(im_morphism, im_module); }; });

  auto* induce_xmod = app.add_subcommand("induce-xmod", "Induced crossed module along a morphism");
  std::string ix_morphism, ix_xmod;
  induce_xmod->add_option("--morphism", ix_morphism, "morphism with \"target\" groupoid")->required();
  induce_xmod->add_option("--xmod", ix_xmod)->required();
  induce_xmod->callback([&] {
    run = [&] { return cmd_induce_xmod(ix_morphism, ix_xmod, opt.rewrite()); };
  });

  auto*                    free_module_cmd = app.add_subcommand("free-module", "Free module on generators");
  std::string              fm_base;
  std::vector<std::string> fm_gens;
  free_module_cmd->add_option("--base", fm_base, "groupoid or presentation")->required();
  free_module_cmd->add_option("--gen", fm_gens, "id:object")->required();
  free_module_cmd->callback([&] { run = [&] { return cmd_free_module(fm_base, fm_gens); }; });

  auto*                    free_xmod_cmd = app.add_subcommand("free-xmod", "Free crossed module on cells");
  std::string              fx_base;
  std::vector<std::string> fx_cells;
  free_xmod_cmd->add_option("--base", fx_base, "groupoid or presentation")->required();
  free_xmod_cmd->add_option("--cell", fx_cells, "id:object:w1,w2,...");
  free_xmod_cmd->callback([&] { run = [&] { return cmd_free_xmod(fx_base, fx_cells); }; });

  auto*                    universal = app.add_subcommand("universal-morphism", "U_u(G) and its unit");
  std::string              u_gpd, u_objects;
  std::vector<std::string> u_send;
  universal->add_option("--gpd", u_gpd)->required();
  universal->add_option("--objects", u_objects, "comma-separated target objects")->required();
  universal->add_option("--send", u_send, "object=target")->required();
  universal->callback([&] {
    run = [&] { return cmd_universal(u_gpd, u_objects, u_send, opt.rewrite()); };
  });

  auto*       quotient = app.add_subcommand("quotient", "Quotient by the normal closure of arrows");
  std::string q_gpd, q_arrows;
  quotient->add_option("--gpd", q_gpd)->required();
  quotient->add_option("--arrows", q_arrows, "comma-separated arrow ids")->required();
  quotient->callback([&] { run = [&] { return cmd_quotient(q_gpd, q_arrows); }; });

  auto*       colim = app.add_subcommand("colim", "Colimit of a connected diagram");
  std::string c_diagram;
  colim->add_option("--diagram", c_diagram)->required();
  colim->callback([&] { run = [&] { return cmd_colim(c_diagram, opt.rewrite()); }; });

  auto* cocart = app.add_subcommand("check-cocartesian", "Cocartesian certificate over an object map");
  std::string              cc_gpd, cc_objects, cc_target, cc_psi;
  std::vector<std::string> cc_send;
  std::size_t              cc_max = 12;
  cocart->add_option("--gpd", cc_gpd)->required();
  cocart->add_option("--objects", cc_objects)->required();
  cocart->add_option("--send", cc_send, "object=target")->required();
  cocart->add_option("--target", cc_target, "groupoid on the target objects; default U_u(G)");
  cocart->add_option("--psi", cc_psi, "morphism into --target");
  cocart->add_option("--max-arrows", cc_max, "battery size bound")->capture_default_str();
  cocart->callback([&] {
    run = [&] { return cmd_check_cocartesian(cc_gpd, cc_objects, cc_send, cc_target, cc_psi, cc_max); };
  });

  auto*       retract = app.add_subcommand("retract", "Retraction of a connected groupoid to a vertex");
  std::string r_gpd, r_xmod, r_object;
  retract->add_option("--gpd", r_gpd);
  retract->add_option("--xmod", r_xmod);
  retract->add_option("--object", r_object)->required();
  retract->callback([&] {
    if (r_gpd.empty() == r_xmod.empty()) {
      throw CLI::ValidationError("retract", "give exactly one of --gpd and --xmod");
    }
    run = [&] { return cmd_retract(r_gpd, r_xmod, r_object); };
  });

  auto*       dcomp = app.add_subcommand("d-complete", "Crossed square from two crossed P-modules");
  std::string d_mu, d_nu;
  dcomp->add_option("--mu", d_mu)->required();
  dcomp->add_option("--nu", d_nu)->required();
  dcomp->callback([&] { run = [&] { return cmd_d_complete(d_mu, d_nu); }; });

  auto*       tensor = app.add_subcommand("tensor", "Nonabelian tensor product");
  std::string t_m, t_n, t_mu, t_nu;
  tensor->add_option("--m", t_m, "group: library name or JSON file (trivial actions)");
  tensor->add_option("--n", t_n, "group: library name or JSON file (trivial actions)");
  tensor->add_option("--mu", t_mu, "crossed module M -> P");
  tensor->add_option("--nu", t_nu, "crossed module N -> P");
  tensor->callback([&] { run = [&] { return cmd_tensor(t_m, t_n, t_mu, t_nu, opt.rewrite()); }; });

  auto*       scenario = app.add_subcommand("scenario", "Run a named scenario");
  std::string s_name;
  bool        s_list = false;
  scenario->add_option("name", s_name);
  scenario->add_flag("--list", s_list);
  scenario->callback([&] { run = [&] { return cmd_scenario(s_name, s_list, opt.rewrite()); }; });

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    return emit(opt, run());
  } catch (io::ValidationFailed const& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kInput;
  } catch (InputError const& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (InfiniteBase const& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (TooLarge const& e) {
    std::cerr << "too large: " << e.what() << "\n";
    return kInput;
  } catch (Json::exception const& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
}
