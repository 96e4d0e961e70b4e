#include "adjointkit/json_io.hpp"

#include <stdexcept>

namespace adjointkit {

json to_json(const Rat& x) { return x.str(); }

json to_json(const QVec& v) {
  json a = json::array();
  for (const Rat& x : v) a.push_back(x.str());
  return a;
}

json to_json(const QMat& m) {
  json a = json::array();
  for (const QVec& row : m) a.push_back(to_json(row));
  return a;
}

namespace {

json zvec_json(const ZVec& v) {
  json a = json::array();
  for (long long x : v) a.push_back(x);
  return a;
}

json ivec_json(const std::vector<int>& v) {
  json a = json::array();
  for (int x : v) a.push_back(x);
  return a;
}

}  // namespace

json to_json(const HalfSpace& h) {
  return {{"normal", to_json(h.normal)}, {"offset", h.offset.str()}};
}

json to_json(const Polytope& p) {
  json j{{"ambient", p.ambient()}, {"dim", p.dim()}, {"vertices", to_json(p.vertices())}};
  json hs = json::array();
  for (const HalfSpace& h : p.hrep()) hs.push_back(to_json(h));
  j["hrep"] = hs;
  return j;
}

json to_json(const CommonPointCertificate& c) {
  // memberships[i] holds the convex coefficients over hull(V minus v_i).
  return {{"point", to_json(c.point)}, {"memberships", to_json(c.memberships)}};
}

json to_json(const Simplex& s) { return {{"vertices", to_json(s.verts)}}; }

json to_json(const AlignedSimplex& s) {
  json j{{"vertices", to_json(s.simplex.verts)}};
  if (s.face.empty()) {
    j["face"] = json::array();
  } else {
    j["face"] = to_json(s.face.vertices());
  }
  j["part"] = s.part ? json(*s.part) : json(nullptr);
  return j;
}

json to_json(const SimplexCover& c) {
  json arr = json::array();
  for (const AlignedSimplex& s : c.simplices) arr.push_back(to_json(s));
  return {{"simplices", arr}};
}

json to_json(const MonoidElem& e) {
  return {{"deg", zvec_json(e.deg)}, {"payload", zvec_json(e.payload)}};
}

json to_json(const GradedMonoid& m) {
  json gens = json::array();
  for (const MonoidElem& g : m.gens) gens.push_back(to_json(g));
  return {{"n", m.n}, {"k", m.k}, {"generators", gens}};
}

json to_json(const GenEntry& g) {
  json j = to_json(g.elem);
  j["provenance"] = g.provenance;
  return j;
}

json to_json(const GeneratorSet& g) {
  json elems = json::array();
  for (const GenEntry& e : g.elems) elems.push_back(to_json(e));
  return {{"n", g.n}, {"k", g.k}, {"elements", elems}};
}

json to_json(const TransferMatrices& t) {
  json a = json::array(), b = json::array();
  for (const ZVec& row : t.a) a.push_back(zvec_json(row));
  for (const ZVec& row : t.b) b.push_back(zvec_json(row));
  return {{"a", a}, {"b", b}, {"p", t.p}, {"q", t.q}};
}

json to_json(const GenerationReport& r) {
  json missing = json::array();
  for (const MonoidElem& e : r.missing) missing.push_back(to_json(e));
  return {{"ok", r.ok}, {"missing", missing}};
}

json to_json(const EquivalenceReport& r) {
  return {{"consistent", r.consistent}, {"notes", r.notes}};
}

json to_json(const ExtensionReport& r) {
  return {{"ok", r.ok}, {"generators", to_json(r.gens)}, {"notes", r.notes}};
}

json to_json(const NumericalSurface& s) {
  return {{"curves", s.curves},   {"q", to_json(s.q)},
          {"k", to_json(s.k)},    {"effective", to_json(s.effective)},
          {"mori", to_json(s.mori)}};
}

json to_json(const ZariskiResult& z) {
  return {{"p", to_json(z.p)},
          {"n", to_json(z.n)},
          {"support", ivec_json(z.support)},
          {"nu", to_json(z.nu)}};
}

json to_json(const ContractionResult& c) {
  return {{"surface", to_json(c.surface)},
          {"pushforward", to_json(c.pushforward)},
          {"pullback", to_json(c.pullback)}};
}

json to_json(const MMPResult& m) {
  json steps = json::array();
  for (const MMPStep& s : m.steps)
    steps.push_back(
        {{"index", s.index}, {"orig", s.orig}, {"pushforward", to_json(s.pushforward)}});
  return {{"steps", steps},
          {"outcome", m.outcome},
          {"final", to_json(m.final_surface)},
          {"final_delta", to_json(m.final_delta)},
          {"orig_index", ivec_json(m.orig_index)}};
}

json to_json(const Chamber& c) {
  return {{"cell", to_json(c.cell)}, {"contracted", ivec_json(c.contracted)}};
}

json to_json(const AdjointInstance& inst) {
  json rays = json::array();
  for (const ZVec& v : inst.rays) rays.push_back(zvec_json(v));
  return {{"surface", to_json(inst.surface)},
          {"rays", rays},
          {"boundaries", to_json(inst.deltas)}};
}

json to_json(const PipelineResult& r) {
  return {{"generators", to_json(r.gens)}, {"verified", r.verified}, {"notes", r.notes}};
}

json to_json(const TraceCheck& t) {
  json steps = json::array();
  for (const TraceStepCheck& s : t.steps) {
    json step{{"index", s.index}, {"event", s.event}, {"ok", s.ok}};
    if (!s.note.empty()) step["note"] = s.note;
    steps.push_back(std::move(step));
  }
  return {{"ok", t.ok}, {"steps", steps}};
}

namespace {

const json& need(const json& j, const char* k) {
  if (!j.is_object() || !j.contains(k))
    throw std::invalid_argument(std::string("json: missing field '") + k + "'");
  return j.at(k);
}

long long to_ll_checked(const json& j) {
  if (!j.is_number_integer()) throw std::invalid_argument("json: expected an integer");
  return j.get<long long>();
}

}  // namespace

Rat rat_from_json(const json& j) {
  if (j.is_number_integer()) return Rat(j.get<long long>());
  if (j.is_string()) return Rat::parse(j.get<std::string>());
  throw std::invalid_argument("json: expected a rational as \"p/q\" or an integer");
}

QVec qvec_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("json: expected an array of rationals");
  QVec v;
  for (const json& x : j) v.push_back(rat_from_json(x));
  return v;
}

QMat qmat_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("json: expected an array of rows");
  QMat m;
  for (const json& row : j) m.push_back(qvec_from_json(row));
  return m;
}

ZVec zvec_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("json: expected an array of integers");
  ZVec v;
  for (const json& x : j) v.push_back(to_ll_checked(x));
  return v;
}

HalfSpace halfspace_from_json(const json& j) {
  return {qvec_from_json(need(j, "normal")), rat_from_json(need(j, "offset"))};
}

Polytope polytope_from_json(const json& j) {
  QMat verts = qmat_from_json(need(j, "vertices"));
  int ambient = -1;
  if (j.contains("ambient")) ambient = static_cast<int>(to_ll_checked(j.at("ambient")));
  if (ambient < 0) {
    if (verts.empty()) throw std::invalid_argument("json: polytope needs vertices or an ambient");
    ambient = static_cast<int>(verts[0].size());
  }
  return convex_hull(ambient, verts);
}

MonoidElem monoid_elem_from_json(const json& j) {
  return {zvec_from_json(need(j, "deg")), zvec_from_json(need(j, "payload"))};
}

GradedMonoid monoid_from_json(const json& j) {
  GradedMonoid m;
  m.n = static_cast<int>(to_ll_checked(need(j, "n")));
  m.k = static_cast<int>(to_ll_checked(need(j, "k")));
  for (const json& g : need(j, "generators")) m.gens.push_back(monoid_elem_from_json(g));
  validate(m);
  return m;
}

GeneratorSet genset_from_json(const json& j) {
  GeneratorSet g;
  g.n = static_cast<int>(to_ll_checked(need(j, "n")));
  g.k = static_cast<int>(to_ll_checked(need(j, "k")));
  for (const json& e : need(j, "elements")) {
    GenEntry entry;
    entry.elem = monoid_elem_from_json(e);
    entry.provenance = e.contains("provenance") ? e.at("provenance").get<std::string>() : "";
    g.elems.push_back(std::move(entry));
  }
  return g;
}

TransferMatrices transfer_from_json(const json& j) {
  TransferMatrices t;
  for (const json& row : need(j, "a")) t.a.push_back(zvec_from_json(row));
  for (const json& row : need(j, "b")) t.b.push_back(zvec_from_json(row));
  t.p = to_ll_checked(need(j, "p"));
  t.q = to_ll_checked(need(j, "q"));
  return t;
}

NumericalSurface surface_from_json(const json& j) {
  NumericalSurface s;
  for (const json& name : need(j, "curves")) s.curves.push_back(name.get<std::string>());
  s.r = static_cast<int>(s.curves.size());
  s.q = qmat_from_json(need(j, "q"));
  s.k = qvec_from_json(need(j, "k"));
  s.effective = qmat_from_json(need(j, "effective"));
  s.mori = qmat_from_json(need(j, "mori"));
  validate_surface(s);
  return s;
}

AdjointInstance instance_from_json(const json& j) {
  AdjointInstance inst;
  for (const json& v : need(j, "rays")) inst.rays.push_back(zvec_from_json(v));
  if (j.contains("surface")) {
    inst.surface = surface_from_json(j.at("surface"));
  } else {
    // Hand-authored inputs may give just the fan and k; the surface follows.
    QVec k = qvec_from_json(need(j, "k"));
    inst.surface = toric_surface(inst.rays, k);
  }
  inst.deltas = qmat_from_json(need(j, "boundaries"));
  validate_instance(inst);
  return inst;
}

}  // namespace adjointkit
