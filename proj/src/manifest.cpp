#include "bellsim/manifest.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>

#include "bellsim/errors.hpp"
#include "bellsim/version.hpp"

namespace bellsim {

nlohmann::ordered_json RunManifest::to_json(bool with_timestamp) const {
  nlohmann::ordered_json j;
  j["schema"] = kManifestSchema;
  j["tool_version"] = kToolVersion;
  if (with_timestamp) j["timestamp"] = iso8601_utc_now();
  j["command"] = command;
  j["argv"] = argv;
  j["outputs"] = outputs;
  if (!file_schema.empty()) j["file_schema"] = file_schema;
  return j;
}

void write_manifest_sidecar(const RunManifest& manifest,
                            const std::string& output_path) {
  const std::string path = output_path + ".manifest.json";
  std::ofstream out(path);
  if (!out) {
    throw error("cannot write manifest sidecar '" + path + "'");
  }
  out << manifest.to_json(/*with_timestamp=*/true).dump(2) << '\n';
}

std::string iso8601_utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buffer[80];
  std::snprintf(buffer, sizeof(buffer), "%04d-%02d-%02dT%02d:%02d:%02dZ",
                utc.tm_year + 1900, utc.tm_mon + 1, utc.tm_mday, utc.tm_hour,
                utc.tm_min, utc.tm_sec);
  return buffer;
}

}  // namespace bellsim
