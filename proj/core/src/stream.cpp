#include "dynmatch/stream.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

namespace dynmatch {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

bool next_token(std::string_view& s, std::string_view& tok) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  if (s.empty()) return false;
  std::size_t end = 0;
  while (end < s.size() && s[end] != ' ' && s[end] != '\t') ++end;
  tok = s.substr(0, end);
  s.remove_prefix(end);
  return true;
}

std::uint32_t parse_id(std::string_view tok, std::size_t line) {
  std::uint32_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(line, "expected vertex id, got '" + std::string(tok) + "'");
  }
  return value;
}

}  // namespace

UpdateStream parse_stream(std::istream& in) {
  UpdateStream out;
  std::uint32_t max_id = 0;
  bool saw_id = false;
  std::string raw;
  std::size_t line_no = 0;
  bool first_content_line = true;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;

    std::string_view rest = line;
    std::string_view tok;
    next_token(rest, tok);

    if (first_content_line && tok == "n") {
      std::string_view count;
      if (!next_token(rest, count)) throw ParseError(line_no, "header missing count");
      if (next_token(rest, tok)) throw ParseError(line_no, "trailing tokens after header");
      out.vertex_count = parse_id(count, line_no);
      out.had_header = true;
      first_content_line = false;
      continue;
    }
    first_content_line = false;

    UpdateKind kind;
    if (tok == "+") {
      kind = UpdateKind::Insert;
    } else if (tok == "-") {
      kind = UpdateKind::Delete;
    } else {
      throw ParseError(line_no, "expected '+' or '-', got '" + std::string(tok) + "'");
    }
    std::string_view a, b;
    if (!next_token(rest, a) || !next_token(rest, b)) {
      throw ParseError(line_no, "expected two vertex ids");
    }
    if (next_token(rest, tok)) throw ParseError(line_no, "trailing tokens");
    const std::uint32_t u = parse_id(a, line_no);
    const std::uint32_t v = parse_id(b, line_no);
    if (u == v) throw ParseError(line_no, "self-loop (" + std::string(a) + ")");
    out.events.push_back({kind, Edge(u, v)});
    max_id = std::max(max_id, std::max(u, v));
    saw_id = true;
  }
  if (!out.had_header) {
    out.vertex_count = saw_id ? max_id + 1 : 0;
  }
  return out;
}

UpdateStream parse_stream(const std::string& text) {
  std::istringstream in(text);
  return parse_stream(in);
}

UpdateStream load_stream_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open stream file: " + path);
  return parse_stream(in);
}

void write_stream(std::ostream& out, const UpdateStream& s) {
  out << "n " << s.vertex_count << "\n";
  for (const UpdateEvent& ev : s.events) {
    out << (ev.kind == UpdateKind::Insert ? '+' : '-') << ' ' << ev.edge.u << ' '
        << ev.edge.v << "\n";
  }
}

}  // namespace dynmatch
