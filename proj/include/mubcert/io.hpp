#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "mubcert/certify.hpp"
#include "mubcert/oracles.hpp"
#include "mubcert/qrac.hpp"

namespace mubcert {

using Json = nlohmann::ordered_json;

/// printf("%.*g") with `digits` significant digits; non-finite values become "null".
std::string format_real(double value, int digits);

/// Serialises with every floating-point number at 17 significant digits.
std::string dump_json(const Json& value, int indent = 2);

Json to_json(const ComplexMatrix& m);
Json to_json(const MeasurementPair& pair);
Json to_json(const OverlapData& data);
Json to_json(const AspBounds& bounds);
Json to_json(const CertificationReport& report);
Json to_json(const QracConfiguration& config);
Json to_json(const SeesawResult& result);
Json to_json(const SuiteOutcome& outcome);

/// Parses {"dim": d, "A": [op...], "B": [op...]} where op is a d×d array of
/// [re, im] pairs. Throws ParseError for shape problems and the POVM
/// validation codes (prefixed with `source`) for invalid operators.
MeasurementPair pair_from_json(const Json& doc, std::string_view source = "<memory>");

MeasurementPair read_measurement_file(const std::filesystem::path& path);
void write_measurement_file(const std::filesystem::path& path, const MeasurementPair& pair);

void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace mubcert
