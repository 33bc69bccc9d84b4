#include "iifs/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "iifs/errors.hpp"

namespace iifs {

namespace {
std::string strip(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}
}  // namespace

std::vector<std::uint64_t> read_digit_csv(std::istream& in) {
  std::vector<std::uint64_t> digits;
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = strip(line);
    if (t.empty()) continue;
    if (!header_seen) {
      if (t != "digit")
        throw InvalidParameterError("digit CSV line 1: expected header 'digit', got '" + t + "'");
      header_seen = true;
      continue;
    }
    try {
      std::size_t pos = 0;
      unsigned long long v = std::stoull(t, &pos);
      if (pos != t.size() || v == 0) throw std::invalid_argument("");
      digits.push_back(v);
    } catch (const std::exception&) {
      throw InvalidParameterError("digit CSV line " + std::to_string(lineno) +
                                  ": expected a positive integer, got '" + t + "'");
    }
  }
  if (!header_seen) throw InvalidParameterError("digit CSV: missing header 'digit'");
  return digits;
}

std::vector<std::uint64_t> read_digit_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParameterError("cannot open file: " + path);
  return read_digit_csv(in);
}

void write_digit_csv(std::ostream& out, const std::vector<std::uint64_t>& digits) {
  out << "digit\n";
  for (auto d : digits) out << d << "\n";
}

void read_sequence_csv(std::istream& in, std::vector<double>& s, std::vector<double>& r) {
  s.clear();
  r.clear();
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = strip(line);
    if (t.empty()) continue;
    if (!header_seen) {
      if (t != "s,r")
        throw InvalidParameterError("sequence CSV line 1: expected header 's,r'");
      header_seen = true;
      continue;
    }
    std::size_t comma = t.find(',');
    if (comma == std::string::npos)
      throw InvalidParameterError("sequence CSV line " + std::to_string(lineno) +
                                  ": expected two comma-separated values");
    try {
      double sv = std::stod(strip(t.substr(0, comma)));
      double rv = std::stod(strip(t.substr(comma + 1)));
      if (!std::isfinite(sv) || !std::isfinite(rv)) throw std::invalid_argument("");
      s.push_back(sv);
      r.push_back(rv);
    } catch (const std::exception&) {
      throw InvalidParameterError("sequence CSV line " + std::to_string(lineno) +
                                  ": malformed numeric row");
    }
  }
  if (!header_seen) throw InvalidParameterError("sequence CSV: missing header 's,r'");
}

std::string format_double(double v, int significant) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", significant, v);
  return buf;
}

}  // namespace iifs
