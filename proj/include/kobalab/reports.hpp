#pragma once

#include <iosfwd>

#include <nlohmann/json_fwd.hpp>

#include "kobalab/criteria.hpp"
#include "kobalab/dynamics.hpp"
#include "kobalab/visibility.hpp"

namespace kobalab {

inline constexpr int kSchemaVersion = 1;

nlohmann::json to_json(const Point& p);
nlohmann::json to_json(const Interval& iv);
nlohmann::json to_json(const MetricEstimate& e);
nlohmann::json to_json(const MShellEstimate& e);
nlohmann::json to_json(const DistanceEstimate& e);
nlohmann::json to_json(const AlmostGeodesicCertificate& c);
nlohmann::json to_json(const GromovProbeReport& r);
nlohmann::json to_json(const DivergenceReport& r);
nlohmann::json to_json(const VisibilityReport& r);
nlohmann::json to_json(const GoldilocksReport& r);
nlohmann::json to_json(const EvlReport& r);
nlohmann::json to_json(const ExampleClaimsReport& r);
nlohmann::json to_json(const OrbitRecord& r);
nlohmann::json to_json(const WDVerdict& v);
nlohmann::json to_json(const ConstancyReport& r);

// CSV payloads (column layouts documented in docs/formats.md)
void write_depth_csv(std::ostream& os, const VisibilityReport& r);
void write_gromov_csv(std::ostream& os, const GromovProbeReport& r);
void write_divergence_csv(std::ostream& os, const DivergenceReport& r);
void write_goldilocks_csv(std::ostream& os, const GoldilocksReport& r);
void write_evl_csv(std::ostream& os, const EvlReport& r);
void write_orbit_csv(std::ostream& os, const OrbitRecord& r);
void write_orbits_csv(std::ostream& os, const std::vector<OrbitRecord>& orbits);

}  // namespace kobalab
