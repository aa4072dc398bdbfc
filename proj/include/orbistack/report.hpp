#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "orbistack/matrix.hpp"
#include "orbistack/numeric.hpp"

namespace orbistack {

using Json = nlohmann::ordered_json;

// Machine-readable run reports, schema "orbistack-report/1". Reports are
// deterministic for fixed inputs and flags: keys are emitted in insertion
// order and no timing field is present unless explicitly requested.
inline constexpr const char* kReportSchema = "orbistack-report/1";

inline Json int_to_json(const Int& v) {
    if (mpz_fits_slong_p(v.get_mpz_t())) return Json(v.get_si());
    return Json(v.get_str());  // falls back to a decimal string
}

inline Json matrix_to_json(const IntegerMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.dim(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(int_to_json(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Json make_report(const std::string& command, const std::vector<std::string>& argv) {
    Json j;
    j["schema"] = kReportSchema;
    j["command"] = command;
    j["argv"] = argv;
    return j;
}

inline std::string render_report(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace orbistack
