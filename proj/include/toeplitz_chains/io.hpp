#ifndef TOEPLITZ_CHAINS_IO_HPP
#define TOEPLITZ_CHAINS_IO_HPP

#include <string>

#include <json.hpp>

#include "toeplitz_chains/correlation_matrix.hpp"
#include "toeplitz_chains/model.hpp"
#include "toeplitz_chains/smith.hpp"
#include "toeplitz_chains/string_correlators.hpp"
#include "toeplitz_chains/symbol.hpp"
#include "toeplitz_chains/transfer_spectrum.hpp"

namespace toeplitz_chains {

/// 17 significant digits: round-trip exact for doubles, reproducible output.
std::string fmt17(double v);

/// Parse the model-spec document. Keys: class ("BDI"|"AIII"), sigma (+-1) or
/// theta (radians), n_P, zeros_inside / zeros_outside as arrays of [re, im],
/// optional multiplicity (1|2, default 2), or couplings as [alpha, re, im]
/// triples instead of zeros.
ModelSpec parse_model(const nlohmann::json& doc);
ModelSpec parse_model_text(const std::string& text);

nlohmann::json model_to_json(const ModelSpec& m);

/// Stable content hash (FNV-1a 64 over the canonical serialization).
std::string model_digest(const ModelSpec& m);

nlohmann::json series_to_json(const CorrelatorSeries& series);
nlohmann::json determinant_to_json(const DeterminantResult& det);
nlohmann::json transfer_to_json(const TransferReport& rep);
nlohmann::json spectral_to_json(const SpectralReport& rep);

std::string fourier_slice_csv(const FourierSlice& slice);
std::string spectral_reports_csv(const std::vector<SpectralReport>& reports);

nlohmann::json fixture_to_json(const SmithFixture& fix);
SmithFixture fixture_from_json(const nlohmann::json& doc);

}  // namespace toeplitz_chains

#endif
