#pragma once

// Command-line front end. Exit codes: 0 = ok / within bounds,
// 1 = measured quasiprobability violates the bounds, 2 = usage or input error.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "wigbound/spectra.hpp"
#include "wigbound/states.hpp"
#include "wigbound/wigner.hpp"

namespace wigbound {

enum class Verdict { within, below_min, above_max };

const char* to_string(Verdict v);

struct CheckReport {
    double q_value = 0.0;
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    double area_bound = 0.0; // A_S / pi
    Verdict verdict = Verdict::within;
    double margin = 0.0;                   // discretization_allowance + noise_margin
    double discretization_allowance = 0.0; // 2 dq dp
    double noise_margin = 0.0;             // user supplied
    Method method = Method::exact;
    bool truncated = false;
};

/// Compares Q_S of a measured grid with the bounds for s.
CheckReport check_quasiprobability(const WignerGrid& w, const Region& s, double noise_margin,
                                   const BoundsOptions& opts = {});

nlohmann::json to_json(const CheckReport& r);

/// oscillator:N | coherent:Q0,P0 | csv:PATH | mix:W1*SPEC1+W2*SPEC2...
/// Generated states are sampled on `base`, widened as needed for coherent states.
Ensemble parse_state_spec(std::string_view spec, const GridSpec& base = default_state_grid());

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace wigbound
