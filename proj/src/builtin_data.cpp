#include "cosmicrng/catalog.hpp"
#include "cosmicrng/planner.hpp"

namespace cosmicrng {

namespace {

// Hipparcos (1997), Hipparcos re-reduction (2007) and Gaia TGAS (2016)
// distance estimates. Blank distance cells are kept as rows with an empty
// distance and are dropped on load.
constexpr std::string_view kCatalogCsv = R"(# Distances of the cosmic radiation sources (light-years).
# The 1997 release carries no per-source uncertainty.
name,ra_deg,dec_deg,vmag,distance_ly,sigma_ly,epoch
HIP 15416,,,4.85,1177,,1997
HIP 15416,,,4.85,1177,98,2007
HIP 117447,,,5.43,16300,,1997
HIP 117447,,,5.43,6151,4294,2007
HIP 2876,,,5.75,3623.96,,1997
HIP 2876,,,5.75,3622,1368,2007
HIP 2876,,,5.75,2675,1664,2016
HIP 6522,,,6.07,32600,,1997
HIP 6522,,,6.07,32600,120620,2007
HIP 6522,,,6.07,5488,4345,2016
HIP 3030,,,6.75,5346.83,,1997
HIP 3030,,,6.75,5344,4731,2007
HIP 100548,,,7.03,40750,,1997
HIP 100548,,,7.03,5621,4167,2007
HD 33339,,,7.99,,,1997
HD 33339,,,7.99,,,2007
HD 33339,,,7.99,756,75,2016
HIP 20276,,,8.24,65200,,1997
HIP 20276,,,8.24,4592,5950,2007
HIP 20276,,,8.24,1835,498,2016
HIP 3752,,,9.02,4076.95,,1997
HIP 3752,,,9.02,4075,6571,2007
HIP 3752,,,9.02,908,153,2016
HIP 114579,,,9.27,163000,,1997
HIP 114579,,,9.27,7409,18523,2007
HIP 114579,,,9.27,1967,583,2016
HIP 117690,,,9.9,163000,,1997
HIP 117690,,,9.9,,,2007
HIP 117690,,,9.9,21733,57676,2016
HIP 23114,,,10.6,163000,,1997
HIP 23114,,,10.6,,,2007
HIP 23114,,,10.6,2243,569,2016
HIP 55892,171.8377,-24.16971,6.735,,,1997
HIP 55892,171.8377,-24.16971,6.735,3881,2402,2007
HIP 55892,171.8377,-24.16971,6.735,3325,1649,2016
HIP 117928,358.7932,72.46028,8.9,,,1997
HIP 117928,358.7932,72.46028,8.9,3835,3384,2007
HIP 117928,358.7932,72.46028,8.9,3454,1433,2016
)";

// Photon counting runs: signal range in s^-1, data volume, background,
// signal-to-background ratio and per-bit min-entropy of the raw data.
constexpr std::string_view kPhotonRunsCsv = R"(# Photon counting data per source (rates in s^-1).
name,vmag,distance_ly,signal_min_hz,signal_max_hz,data_gbit,background_hz,ratio,min_entropy
HIP15416,4.85,1177,2.20e6,2.28e6,1,914,2450,0.9969
HIP117447,5.43,6151,0.86e6,1.2e6,1,512,2012,0.9978
HIP2876,5.75,2675,0.51e6,0.53e6,1,464,1130,0.9981
HIP6522,6.07,5488,0.48e6,0.68e6,1,578,1010,0.9983
HIP3030,6.75,5344,0.64e6,0.65e6,1,518,1260,0.9976
HIP100548,7.03,5621,0.33e6,0.52e6,1,615,680,0.9973
HD33339,7.99,756,0.23e6,0.24e6,1,662,350,0.9980
HIP20276,8.24,1835,0.18e6,0.26e6,1,486,400,0.9980
HIP3752,9.02,908,0.12e6,0.13e6,1,532,235,0.9973
HIP114579,9.27,1967,0.05e6,0.10e6,1,442,170,0.9974
HIP117690,9.9,21733,0.033e6,0.043e6,1,674,57,0.9938
HIP23114,10.6,2243,0.009e6,0.013e6,0.1,417,28,0.9909
IGR J03334+371,13.5,7.49e8,0.0011e6,0.0031e6,0.1,359,8,0.9897
)";

}  // namespace

std::string_view catalog::builtin_catalog_csv() { return kCatalogCsv; }

const catalog::Catalog& catalog::builtin_catalog() {
  static const Catalog instance = load_catalog_string(kCatalogCsv);
  return instance;
}

std::string_view planner::builtin_photon_runs_csv() { return kPhotonRunsCsv; }

const std::vector<planner::PhotonRun>& planner::builtin_photon_runs() {
  static const std::vector<PhotonRun> runs = load_photon_runs_string(kPhotonRunsCsv);
  return runs;
}

}  // namespace cosmicrng
