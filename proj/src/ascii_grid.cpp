#include "terracarta/ascii_grid.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

namespace terracarta {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' ||
         c == '\v';
}

// Whitespace-delimited token scanner over the raw text.
struct TokenScanner {
  std::string_view text;
  std::size_t pos = 0;

  std::optional<std::string_view> next() {
    while (pos < text.size() && is_space(text[pos])) ++pos;
    if (pos >= text.size()) return std::nullopt;
    const std::size_t start = pos;
    while (pos < text.size() && !is_space(text[pos])) ++pos;
    return text.substr(start, pos - start);
  }
};

std::optional<double> parse_number(std::string_view tok) {
  double v = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [p, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || p != last) return std::nullopt;
  return v;
}

// Round-trip-exact formatting for header reals.
std::string format_exact(double v) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

// 6 significant digits for cell values.
void append_g6(std::string& out, double v) {
  char buf[32];
  auto [p, ec] =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 6);
  out.append(buf, p);
}

}  // namespace

Grid parse_ascii_grid(std::string_view text, const Crs& crs) {
  TokenScanner scan{text};

  std::optional<double> ncols, nrows, xll, yll, cellsize, nodata;
  bool x_is_center = false, y_is_center = false;
  std::optional<std::string_view> first_cell_token;

  // Header: KEY value lines until the first token that parses as a number.
  while (true) {
    auto tok = scan.next();
    if (!tok) break;
    if (auto num = parse_number(*tok)) {
      (void)num;
      first_cell_token = tok;
      break;
    }
    const std::string key = lower(*tok);
    auto val_tok = scan.next();
    if (!val_tok) fail(Errc::MalformedHeader, "key '" + key + "' has no value");
    auto val = parse_number(*val_tok);
    if (!val)
      fail(Errc::MalformedHeader, "non-numeric value for key '" + key + "'");

    auto set = [&](std::optional<double>& slot, const char* name) {
      if (slot) fail(Errc::MalformedHeader, std::string("duplicate key '") + name + "'");
      slot = *val;
    };
    if (key == "ncols") set(ncols, "ncols");
    else if (key == "nrows") set(nrows, "nrows");
    else if (key == "xllcorner") set(xll, "xllcorner");
    else if (key == "xllcenter") { set(xll, "xllcenter"); x_is_center = true; }
    else if (key == "yllcorner") set(yll, "yllcorner");
    else if (key == "yllcenter") { set(yll, "yllcenter"); y_is_center = true; }
    else if (key == "cellsize") set(cellsize, "cellsize");
    else if (key == "nodata_value") set(nodata, "nodata_value");
    else fail(Errc::MalformedHeader, "unknown header key '" + key + "'");
  }

  if (!ncols || !nrows || !xll || !yll || !cellsize)
    fail(Errc::MalformedHeader,
         "missing mandatory key (need ncols, nrows, xll*, yll*, cellsize)");
  if (*ncols < 1 || *ncols != std::floor(*ncols))
    fail(Errc::MalformedHeader, "ncols must be a positive integer");
  if (*nrows < 1 || *nrows != std::floor(*nrows))
    fail(Errc::MalformedHeader, "nrows must be a positive integer");
  if (!(*cellsize > 0.0))
    fail(Errc::MalformedHeader, "cellsize must be positive");

  GridHeader h;
  h.ncols = static_cast<int>(*ncols);
  h.nrows = static_cast<int>(*nrows);
  h.cellsize = *cellsize;
  h.xllcorner = x_is_center ? *xll - h.cellsize / 2.0 : *xll;
  h.yllcorner = y_is_center ? *yll - h.cellsize / 2.0 : *yll;
  h.nodata = nodata.value_or(-9999.0);
  h.crs = crs;
  validate_header(h);

  Grid grid(h, h.nodata);
  const std::int64_t expected = grid.size();
  std::int64_t count = 0;
  double* out = grid.values().data();

  auto consume = [&](std::string_view tok) {
    auto v = parse_number(tok);
    if (!v || (!std::isfinite(*v) && *v != h.nodata))
      fail(Errc::NonNumericCell,
           "cell token '" + std::string(tok) + "' is not a finite number");
    if (count >= expected)
      fail(Errc::CellCountMismatch, "more cells than ncols*nrows");
    out[count++] = *v;
  };

  if (first_cell_token) consume(*first_cell_token);
  while (auto tok = scan.next()) consume(*tok);

  if (count != expected) {
    std::ostringstream msg;
    msg << "expected " << expected << " cells, got " << count;
    fail(Errc::CellCountMismatch, msg.str());
  }
  return grid;
}

Grid read_ascii_grid(const std::filesystem::path& file, const Crs& crs) {
  std::ifstream in(file, std::ios::binary);
  if (!in) fail(Errc::BadInput, "cannot open " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_ascii_grid(buf.str(), crs);
}

std::string write_ascii_grid(const Grid& grid) {
  const GridHeader& h = grid.header();
  std::string out;
  out.reserve(static_cast<std::size_t>(grid.size()) * 8 + 128);

  out += "ncols " + std::to_string(h.ncols) + "\n";
  out += "nrows " + std::to_string(h.nrows) + "\n";
  out += "xllcorner " + format_exact(h.xllcorner) + "\n";
  out += "yllcorner " + format_exact(h.yllcorner) + "\n";
  out += "cellsize " + format_exact(h.cellsize) + "\n";
  const std::string nodata_token = format_exact(h.nodata);
  out += "nodata_value " + nodata_token + "\n";

  for (int r = 0; r < h.nrows; ++r) {
    for (int c = 0; c < h.ncols; ++c) {
      if (c) out += ' ';
      const double v = grid(r, c);
      if (grid.is_nodata(v))
        out += nodata_token;
      else
        append_g6(out, v);
    }
    out += '\n';
  }
  return out;
}

void write_ascii_grid(const Grid& grid, const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) fail(Errc::BadInput, "cannot open " + file.string() + " for write");
  out << write_ascii_grid(grid);
}

}  // namespace terracarta
