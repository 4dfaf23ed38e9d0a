#include "bsdom/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>
#include <vector>

namespace bsdom {

namespace {

bool is_separator(char c) { return c == ',' || c == ';' || c == '\t' || c == ' '; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_cells(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  bool in_cell = false;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    const bool sep = i == line.size() || is_separator(line[i]);
    if (sep) {
      if (in_cell) {
        cells.push_back(trim(line.substr(start, i - start)));
        in_cell = false;
      } else if (i < line.size() && (line[i] == ',' || line[i] == ';')) {
        cells.push_back({});  // explicit empty cell between hard separators
      }
    } else if (!in_cell) {
      start = i;
      in_cell = true;
    }
  }
  return cells;
}

bool parse_number(std::string_view cell, double& out) {
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && !cell.empty();
}

[[noreturn]] void fail(std::string_view source, std::size_t line, const std::string& what) {
  throw std::invalid_argument(std::string(source) + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

SampleSet parse_samples(std::string_view text, std::string_view source_name) {
  std::vector<SamplePoint> pts;
  std::vector<double> wts;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool first_content_row = true;
  while (pos <= text.size()) {
    const std::size_t nl = std::min(text.find('\n', pos), text.size());
    std::string_view line = trim(text.substr(pos, nl - pos));
    ++line_no;
    const std::size_t next = nl + 1;

    if (!line.empty() && line.front() != '#') {
      const auto cells = split_cells(line);
      double x = 0.0;
      const bool header = first_content_row && !cells.empty() && !parse_number(cells[0], x);
      first_content_row = false;
      if (!header) {
        if (cells.size() < 2 || cells.size() > 3) {
          fail(source_name, line_no, "expected 2 or 3 columns, got " +
                                         std::to_string(cells.size()));
        }
        double y = 0.0, w = 1.0;
        if (!parse_number(cells[0], x)) {
          fail(source_name, line_no, "bad number '" + std::string(cells[0]) + "'");
        }
        if (!parse_number(cells[1], y)) {
          fail(source_name, line_no, "bad number '" + std::string(cells[1]) + "'");
        }
        if (cells.size() == 3 && !parse_number(cells[2], w)) {
          fail(source_name, line_no, "bad number '" + std::string(cells[2]) + "'");
        }
        pts.push_back({x, y});
        wts.push_back(w);
      }
    }
    if (nl == text.size()) break;
    pos = next;
  }

  if (pts.empty()) {
    throw std::invalid_argument(std::string(source_name) + ": no data rows");
  }
  try {
    return SampleSet(std::move(pts), std::move(wts));
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string(source_name) + ": " + e.what());
  }
}

SampleSet ingest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_samples(buf.str(), path.string());
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw std::logic_error("number formatting failed");
  return std::string(buf, ptr);
}

}  // namespace bsdom
