#pragma once

#include <string>
#include <vector>

#include "berklab/measures.hpp"

namespace berklab {

inline constexpr const char* kVersion = "berklab 0.1.0";

// Map-spec file: {"field": {"kind": "Qp"|"Fpt", "p": int, "var"?: string},
//                 "numerator": [coeff strings, ascending degree],
//                 "denominator": [...]}
// The lift is built by homogenizing numerator and denominator to the common
// degree max(deg num, deg den).
RationalMap load_map_spec_text(const std::string& json_text);
RationalMap load_map_spec_file(const std::string& path);
std::string map_spec_to_json(const RationalMap& f);

// Flat experiment configuration; parse/serialize round-trips exactly and
// every default is explicit in the emitted form.
struct ExperimentConfig {
    std::string command;
    std::string f_path;
    std::string g_path;       // empty: g(z) = z where a target is needed
    int depth = 2;            // residue tree depth
    unsigned nmax = 10;       // iterate range upper end
    std::vector<std::string> samples; // point strings; empty: tree vertices
    std::string eps = "1/100";        // green tolerance (rational string)
    unsigned pgr_depth = 3;
    unsigned pgr_denom = 2;
    std::string mu_ref = "pullback"; // pullback | green | canonical
    std::string out_path;            // empty: stdout only
    std::string format = "json";     // json | csv
    unsigned threads = 1;

    std::string to_json() const;
    static ExperimentConfig from_json(const std::string& text);
    bool operator==(const ExperimentConfig&) const = default;
};

// exact decimal rendering with 6 places, ties to even
std::string decimal6(const mpq_class& x);

// eq-check: the extension of log max{1,|.|} on the 3-vertex standard tree
// has Laplacian +1 at the Gauss point and -1 at the infinity-side vertex.
bool check_laplacian_affine(const FieldPtr& field, std::string* detail = nullptr);

// eq-check: Laplacian of (chordal pairing + both escape potentials) against
// the retracted root divisor minus (d^n + deg g) times the retracted
// canonical point; exact equality of tree measures.
bool check_roots_normalized(const RationalMap& f, const RationalMap& g, unsigned n,
                            const FiniteTree& tree, std::string* detail = nullptr);

// experiment drivers returning deterministic JSON (and CSV where tabular)
struct RunOutput {
    std::string json;
    std::string csv; // empty when not tabular
};

RunOutput run_command(const ExperimentConfig& config);

} // namespace berklab
