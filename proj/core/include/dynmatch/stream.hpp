#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dynmatch/types.hpp"

namespace dynmatch {

// Update-stream text format, one event per line:
//   + <u> <v>     edge insertion
//   - <u> <v>     edge deletion
// Lines starting with '#' are comments. An optional header line `n <count>`
// fixes the vertex universe; without it, n = 1 + max id seen.
struct UpdateStream {
  std::uint32_t vertex_count = 0;
  bool had_header = false;
  std::vector<UpdateEvent> events;
};

UpdateStream parse_stream(std::istream& in);
UpdateStream parse_stream(const std::string& text);
UpdateStream load_stream_file(const std::string& path);

void write_stream(std::ostream& out, const UpdateStream& s);

}  // namespace dynmatch
