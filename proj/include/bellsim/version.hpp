#pragma once

namespace bellsim {

inline constexpr const char* kToolVersion = "0.1.0";

// Schema identifiers pinned by golden-file tests.
inline constexpr const char* kSampleSchema = "bellsim/sample/v1";
inline constexpr const char* kManifestSchema = "bellsim/manifest/v1";
inline constexpr const char* kScanCsvSchema = "bellsim/scan-csv/v1";
inline constexpr const char* kCountsCsvSchema = "bellsim/counts-csv/v1";

inline constexpr const char* kScanCsvHeader = "alpha,beta,p_pp,p_mp,p_pm,p_mm,E";
inline constexpr const char* kCountsCsvHeader = "alpha,beta,outcome,count,exposure";

}  // namespace bellsim
