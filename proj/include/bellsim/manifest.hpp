#pragma once

#include <string>
#include <vector>

#include <json.hpp>

// Run provenance. A manifest records everything needed to reproduce a
// command's outputs bit-exactly: the resolved argument vector (seeds and
// defaults made explicit), the tool version, and the schema of any file
// written. The timestamp is informational only and is excluded from
// deterministic stdout records.

namespace bellsim {

struct RunManifest {
  std::string command;                 // subcommand name
  std::vector<std::string> argv;       // resolved arguments, no program name
  std::vector<std::string> outputs;    // files written by the run
  std::string file_schema;             // schema id of the written files, if any

  // Object with schema, tool_version, command, argv, outputs, file_schema
  // and, when with_timestamp, an ISO-8601 UTC timestamp.
  nlohmann::ordered_json to_json(bool with_timestamp) const;
};

// Writes `<output_path>.manifest.json` next to an output file.
void write_manifest_sidecar(const RunManifest& manifest,
                            const std::string& output_path);

std::string iso8601_utc_now();

}  // namespace bellsim
