#include "floorgraph/png_io.hpp"

#include <png.h>

#include <cstring>
#include <string>

#include "floorgraph/error.hpp"

namespace floorgraph {

LabelImage read_label_png(const std::filesystem::path& path) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.string().c_str())) {
    throw Error(ErrorCode::Io, "cannot read PNG " + path.string() + ": " + image.message);
  }
  image.format = PNG_FORMAT_RGBA;
  LabelImage out(static_cast<int>(image.width), static_cast<int>(image.height));
  std::vector<std::uint8_t> buffer(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
    const std::string msg = image.message;
    png_image_free(&image);
    throw Error(ErrorCode::Format, "corrupt PNG " + path.string() + ": " + msg);
  }
  for (std::size_t i = 0; i < out.pixels.size(); ++i) {
    for (std::size_t c = 0; c < 4; ++c) out.pixels[i][c] = buffer[i * 4 + c];
  }
  return out;
}

void write_label_png(const LabelImage& img, const std::filesystem::path& path) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(img.width);
  image.height = static_cast<png_uint_32>(img.height);
  image.format = PNG_FORMAT_RGBA;
  std::vector<std::uint8_t> buffer;
  buffer.reserve(img.pixels.size() * 4);
  for (const auto& p : img.pixels) buffer.insert(buffer.end(), p.begin(), p.end());
  if (!png_image_write_to_file(&image, path.string().c_str(), 0, buffer.data(), 0, nullptr)) {
    throw Error(ErrorCode::Io, "cannot write PNG " + path.string() + ": " + image.message);
  }
}

void write_indexed_png(const Grid<std::uint8_t>& indices, const std::vector<std::array<std::uint8_t, 3>>& palette,
                       const std::filesystem::path& path) {
  if (palette.empty() || palette.size() > 256) throw Error(ErrorCode::InvalidArgument, "palette size out of range");
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(indices.width());
  image.height = static_cast<png_uint_32>(indices.height());
  image.format = PNG_FORMAT_RGB_COLORMAP;
  image.colormap_entries = static_cast<png_uint_32>(palette.size());
  std::vector<std::uint8_t> colormap;
  for (const auto& c : palette) colormap.insert(colormap.end(), c.begin(), c.end());
  if (!png_image_write_to_file(&image, path.string().c_str(), 0, indices.cells().data(), 0, colormap.data())) {
    throw Error(ErrorCode::Io, "cannot write PNG " + path.string() + ": " + image.message);
  }
}

}  // namespace floorgraph
