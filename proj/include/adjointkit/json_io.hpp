#pragma once

// JSON bindings for every public type. Rationals travel as "p/q" strings
// ("/1" omitted), so round-trips are exact; object key order is fixed to
// keep serialized output byte-stable.

#include "adjointkit/graded_monoid.hpp"
#include "adjointkit/pipeline.hpp"
#include "adjointkit/polytope.hpp"
#include "adjointkit/simplex_cover.hpp"
#include "adjointkit/surface.hpp"

#include <json.hpp>

namespace adjointkit {

using json = nlohmann::ordered_json;

json to_json(const Rat& x);
json to_json(const QVec& v);
json to_json(const QMat& m);
json to_json(const HalfSpace& h);
json to_json(const Polytope& p);
json to_json(const CommonPointCertificate& c);
json to_json(const Simplex& s);
json to_json(const AlignedSimplex& s);
json to_json(const SimplexCover& c);
json to_json(const MonoidElem& e);
json to_json(const GradedMonoid& m);
json to_json(const GenEntry& g);
json to_json(const GeneratorSet& g);
json to_json(const TransferMatrices& t);
json to_json(const GenerationReport& r);
json to_json(const EquivalenceReport& r);
json to_json(const ExtensionReport& r);
json to_json(const NumericalSurface& s);
json to_json(const ZariskiResult& z);
json to_json(const ContractionResult& c);
json to_json(const MMPResult& m);
json to_json(const Chamber& c);
json to_json(const AdjointInstance& inst);
json to_json(const PipelineResult& r);
json to_json(const TraceCheck& t);

Rat rat_from_json(const json& j);
QVec qvec_from_json(const json& j);
QMat qmat_from_json(const json& j);
ZVec zvec_from_json(const json& j);
HalfSpace halfspace_from_json(const json& j);
Polytope polytope_from_json(const json& j);  // reads {"vertices": [...]}
MonoidElem monoid_elem_from_json(const json& j);
GradedMonoid monoid_from_json(const json& j);
GeneratorSet genset_from_json(const json& j);
TransferMatrices transfer_from_json(const json& j);
NumericalSurface surface_from_json(const json& j);
AdjointInstance instance_from_json(const json& j);

}  // namespace adjointkit
