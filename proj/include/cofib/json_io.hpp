#ifndef COFIB_JSON_IO_HPP_
#define COFIB_JSON_IO_HPP_

#include <string>

#include "cofib/colimit.hpp"
#include "cofib/module.hpp"
#include "cofib/presented.hpp"
#include "cofib/xmod.hpp"
#include "cofib/xsq.hpp"
#include "json.hpp"

// JSON forms of the library types. Readers throw InputError with a path to
// the offending member; writers are canonical (sorted keys, groupoids
// canonicalized) so that equal inputs give byte-identical output.
namespace cofib::io {

  using Json = nlohmann::json;

  // The input parsed but violates the axioms of its type.
  class ValidationFailed : public InputError {
   public:
    ValidationFailed(std::string const& where, ValidationReport r);
    ValidationReport report;
  };

  // Parse errors carry the line and column.
  Json        parse_json(std::string const& text, std::string const& source = "<input>");
  Json        read_json_file(std::string const& path);
  std::string dump(Json const& j);

  // {"elements": [name], "table": [[int]]} or {"library": name}.
  Json     to_json(FinGroup const& g);
  FinGroup group_from_json(Json const& j);

  // {"objects": [str], "arrows": [{"id","src","tgt"}], "compose": [[a,b,ab]],
  //  "identity": {obj: arrow}, "inverse": {arrow: arrow}}.
  // Shorthands: {"group": group, "object": name}, {"discrete": [obj]},
  // {"codiscrete": [obj]}, {"connected": {"objects": [obj], "group": group}},
  // {"coproduct": [groupoid]}.
  Json        to_json(FinGroupoid const& g);
  FinGroupoid groupoid_from_json(Json const& j);

  // {"objects": {src: tgt}, "arrows": {src: tgt}}. Arrows may be given on a
  // generating set; the rest follow by composition.
  Json        to_json(FinGroupoid const& g, FinGroupoid const& h, GpdMorphism const& f);
  GpdMorphism morphism_from_json(Json const& j, FinGroupoid const& g, FinGroupoid const& h);
  ObjMap      object_map_from_json(Json const& j, std::vector<std::string> const& from,
                                   std::vector<std::string> const& to);

  // Words are arrays of generator ids, "g^-1" for inverses.
  Json      word_to_json(PresentedGroupoid const& p, GroupWord const& w);
  GroupWord word_from_json(PresentedGroupoid const& p, Json const& j);
  // A path from `start`; the endpoint is checked.
  PgWord path_from_json(PresentedGroupoid const& p, Json const& j, std::size_t start);

  // {"objects", "generators": [{"id","src","tgt"}], "relators": [word]}; a
  // relator may also be {"at": obj, "word": word}.
  Json              to_json(PresentedGroupoid const& p);
  PresentedGroupoid presented_from_json(Json const& j);

  // A presented groupoid with its table when finite.
  Json to_json(Base const& b);
  Json to_json(PresentedGroupoid const& source, PresentedGroupoid const& target,
               BaseMorphism const& f);

  Json to_json(AbelianInvariants const& a);
  Json to_json(ValidationReport const& r);

  // {"base": groupoid, "groups": {obj: {"gens": n, "rels": [[int]]}},
  //  "action": {arrow: [[int]]}}; missing actions follow by composition.
  Json      to_json(GpdModule const& m);
  GpdModule module_from_json(Json const& j);
  // {"base", "generators": [{"id","at"}], "relations": [[[coef, gen, word]]]}
  Json to_json(ModulePres const& p);

  // {"base": groupoid, "fibres": {obj: group}, "mu": {obj: [arrow]},
  //  "action": {arrow: [element]}}; missing actions follow by composition.
  Json      to_json(XModTable const& x);
  XModTable xmod_from_json(Json const& j);
  // {"base", "generators": [{"id","at"}], "boundary": {gen: word},
  //  "relators": [[[gen, word, +-1]]]}
  Json to_json(FpXMod const& x);

  // {"category": "gpd"|"mod"|"xmod", "nodes": {id: node}, "edges":
  //  [{"src","tgt","morphism"}]}. Module edges add "matrices": {obj: [[int]]},
  // crossed module edges "maps": {obj: [element]}.
  struct DiagramInput {
    std::string category;
    GpdDiagram  gpd;
    ModDiagram  mod;
    XModDiagram xmod;
  };
  DiagramInput diagram_from_json(Json const& j);

  Json to_json(GpdDiagram const& d, GpdColimit const& c);
  Json to_json(ModDiagram const& d, ModColimit const& c);
  Json to_json(XModDiagram const& d, XModColimit const& c);

  Json to_json(CrossedSquare const& s);
  Json to_json(TensorPresentation const& t, MutualAction const& a);

}  // namespace cofib::io

#endif  // COFIB_JSON_IO_HPP_
