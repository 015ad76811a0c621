#pragma once

// JSON and CSV emission for every report type, and the body-spec format.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "quermass/body.hpp"
#include "quermass/exact_algebra.hpp"
#include "quermass/grassmann.hpp"
#include "quermass/querm.hpp"
#include "quermass/tomo.hpp"

namespace quermass::report {

using Json = nlohmann::ordered_json;

/// Library and tool versions embedded in every report.
Json versions();

Json to_json(const Estimate& e);
Json to_json(const exact::IdentityReport& r);
Json to_json(const querm::QuermResult& r);
Json to_json(const querm::VariationReport& r);
Json to_json(const querm::CounterexampleCertificate& c);
Json to_json(const querm::ExpansionReport& r);
Json to_json(const body::ConvexityCertificate& c);
Json to_json(const grassmann::RadonIdentityResult& r);
Json to_json(const grassmann::SquareAverageResult& r);
Json to_json(const grassmann::MomentCheckResult& r);
Json to_json(const tomo::ChainReport& r);
Json to_json(const tomo::BPReport& r);
Json to_json(const tomo::PlanarLemmaResult& r);
Json to_json(const tomo::CentroidResult& r);
Json to_json(const tomo::SantaloResult& r);

/// CSV with header "t,f,error" from the variation grid (both signs of t).
void write_variation_csv(std::ostream& out, const querm::VariationReport& r);
/// CSV with header "u1,u2,u3,width,brightness,section_D".
void write_direction_csv(std::ostream& out, const std::vector<tomo::DirectionRow>& rows);

/// Body specification:
///   {"type": "ball", "n": 3, "radius": 1}
///   {"type": "ellipsoid", "axes": [1, 1.3, 0.7]}
///   {"type": "zonal4", "n": 11, "t": 0.05}
///   {"type": "harmonic_perturbation", "n": 3, "t": 0.1,
///    "coeffs": [{"exponents": [4, 0, 0], "c": 1.0}, ...]}
/// The last one is h = 1 + t P with P the given polynomial; it is symmetric
/// when every monomial has even degree. Throws PreconditionError on bad specs.
body::SupportBody body_from_spec(const Json& spec);
/// Accepts a JSON object, a path to a JSON file, or one of the shorthands
/// "ball" / "ball3" / "ball4".
body::SupportBody body_from_argument(const std::string& arg, int default_dim = 3);

}  // namespace quermass::report
