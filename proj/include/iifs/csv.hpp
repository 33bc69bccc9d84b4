#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace iifs {

// Single-column digit CSV with mandatory header `digit`.
std::vector<std::uint64_t> read_digit_csv(std::istream& in);
std::vector<std::uint64_t> read_digit_csv_file(const std::string& path);
void write_digit_csv(std::ostream& out, const std::vector<std::uint64_t>& digits);

// Two-column tabulated sequence CSV with header `s,r`.
void read_sequence_csv(std::istream& in, std::vector<double>& s, std::vector<double>& r);

std::string format_double(double v, int significant = 12);

}  // namespace iifs
