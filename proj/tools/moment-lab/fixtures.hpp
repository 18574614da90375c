#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <momentlab/modforms.hpp>

namespace moment_lab {

// Fixture directory: --fixtures wins, then MOMENT_LAB_FIXTURES, else none.
std::optional<std::filesystem::path> fixture_dir(const std::string& flag);

std::filesystem::path fixture_path(const std::filesystem::path& dir, int weight);

// {weight, dim, n_max, c_max, prec_bits, eigenforms:[{lambda, omega, L_half, sym2}]}
void write_fixture(const std::filesystem::path& file, const momentlab::FormSpace& space);

// Returns nothing when the file is missing or was written with other settings.
std::optional<momentlab::FormSpace> read_fixture(const std::filesystem::path& file, int weight, int n_max,
                                                 long c_max);

}  // namespace moment_lab
