#pragma once

#include "json.hpp"

#include "tatefgl/obstruction.hpp"

namespace tatefgl {

using json = nlohmann::json;

// Poly: [{monomial: {gen: exp}, num, den}], in monomial order.
json poly_to_json(const Poly& p);
Poly poly_from_json(const RingPtr& ring, const json& j);

// Series: [{x_exp, y_exp, t_exp, s_exp, poly}], in term order.
json series_to_json(const Series& s);
Series series_from_json(const RingPtr& ring, const Trunc& w, const json& j);

json trunc_to_json(const Trunc& w);
Trunc trunc_from_json(const json& j);

json ring_to_json(const RingSpec& r);
RingPtr ring_from_json(const json& j);

// {kind, label, ring, window, law}.
json fgl_to_json(const Fgl& F);
Fgl fgl_from_json(const json& j);

json verdict_to_json(const ObstructionVerdict& v);
json jn_to_json(const JnResult& r);
json rigidity_to_json(const RigidityReport& r);
json bm_to_json(const BmReport& r);

}  // namespace tatefgl
