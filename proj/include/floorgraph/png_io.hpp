#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "floorgraph/corpus.hpp"
#include "floorgraph/geometry.hpp"

namespace floorgraph {

/// Reads an 8-bit RGBA (or RGB/gray, expanded) PNG into a LabelImage.
/// Throws Error(Io) or Error(Format).
LabelImage read_label_png(const std::filesystem::path& path);
void write_label_png(const LabelImage& image, const std::filesystem::path& path);

void write_indexed_png(const Grid<std::uint8_t>& indices, const std::vector<std::array<std::uint8_t, 3>>& palette,
                       const std::filesystem::path& path);

}  // namespace floorgraph
