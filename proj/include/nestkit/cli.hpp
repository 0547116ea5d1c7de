#pragma once

namespace nestkit {

// Command-line surface of the nestkit tool. Reads stdin or the listed input
// files, writes one document per input to stdout and one report line per
// input to stderr. Returns 0 on success, 1 on a verified negative, 2 on
// usage or input errors.
int run_cli(int argc, const char* const* argv);

}  // namespace nestkit
