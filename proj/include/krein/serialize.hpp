#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "krein/cmat2.hpp"
#include "krein/extensions.hpp"
#include "krein/oracle_fd.hpp"
#include "krein/weyl_spectral.hpp"

namespace krein {

using json = nlohmann::json;

/// Value rounded to 12 significant digits; NaN/Inf become null.
json num(double v);

/// "%.12g" text of v.
std::string fmt12(double v);

/// [[re, im] x 4], row-major.
json to_json(const CMat2& m);
CMat2 cmat2_from_json(const json& j);

json to_json(const ExtParams& p);
ExtParams ext_params_from_json(const json& j);

json to_json(const ExtensionClass& c);
json to_json(const SpectrumReport& rep);
json to_json(const MatchReport& rep);

/// CSV with header r,re_det,im_det.
void write_det_trace_csv(std::ostream& os, const MatchReport& rep);

}  // namespace krein
