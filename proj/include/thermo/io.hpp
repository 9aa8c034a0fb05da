#pragma once

// JSON and CSV renderings of systems, processes, runs and reports.

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "thermo/carnot.hpp"
#include "thermo/energy.hpp"
#include "thermo/quasistatic.hpp"
#include "thermo/scaling.hpp"

namespace thermo::io {

using Json = nlohmann::ordered_json;

/// %.9g, the fixed precision of every numeric CSV cell.
std::string number(double x);

Json to_json(const StateValue& v);
Json to_json(const System& s);
Json to_json(const Process& p);
Json to_json(const CarnotRun& run);
Json to_json(const FirstLawReport& r);
Json to_json(const MaxEntropyResult& r);
Json to_json(const ConcavityReport& r);

/// Header line and rows, comma separated, "\n" line ends.
void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

void write_polyline_csv(std::ostream& os, const std::vector<PolylineRow>& rows);

}  // namespace thermo::io
