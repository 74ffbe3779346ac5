#pragma once

// Utilization study fixtures: five two-week windows (CFU KPI and the
// network metrics per window) and the three top-10 lists of key individuals.

#include <string>
#include <vector>

namespace fixtures {

inline const std::vector<std::pair<std::string, std::string>> kWindows{
    {"2012-04-01", "2012-04-14"}, {"2012-04-15", "2012-04-28"}, {"2012-04-29", "2012-05-12"},
    {"2012-05-13", "2012-05-26"}, {"2012-05-27", "2012-06-08"}};

inline const std::vector<double> kCfu{71.8, 68.7, 64.5, 75.9, 70.9};
inline const std::vector<double> kDensity{0.2381, 0.3184, 0.3184, 0.2119, 0.3129};
inline const std::vector<double> kCorePeriphery{0.2612, 0.2027, 0.2495, 0.3006, 0.2600};
inline const std::vector<double> kGbc{0.1207, 0.0546, 0.0546, 0.142, 0.0806};
inline const std::vector<double> kGdc{0.3571, 0.345, 0.345, 0.4158, 0.2941};
inline const std::vector<double> kAwvci{0.30443984, 0.08428862, 0.08428862, 0.25957334, 0.18671094};

// Reference correlations, in metric order density, core/periphery, GBC, GDC, AWVCI.
inline const std::vector<double> kReferenceR{-0.83, 0.65, 0.90, 0.53, 0.80};

// Columns of the key-individual table (11 rows each; top 10 used).
inline const std::vector<std::string> kCoreGroup{"42", "22", "16", "37", "27", "10", "6", "2", "33", "20", "26"};
inline const std::vector<std::string> kEcosystem{"42", "37", "22", "27", "16", "10", "33", "6", "2", "38", "44"};
inline const std::vector<std::string> kSurvey{"42", "2", "37", "6", "27", "5", "7", "33", "16", "34", "38"};

}  // namespace fixtures
