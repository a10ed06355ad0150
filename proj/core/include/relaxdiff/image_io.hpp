#ifndef RELAXDIFF_IMAGE_IO_HPP
#define RELAXDIFF_IMAGE_IO_HPP

#include <string>

#include "relaxdiff/grid.hpp"

namespace relaxdiff {

/// PSNR returned for identical images.
inline constexpr double kPsnrCap = 99.0;

/// Reads binary PPM (P6, k = 3) or PGM (P5, k = 1) with maxval 255. Values
/// are byte / 255; width is axis 0, height axis 1.
/// Errors: IoMissing, IoFormat (bad header), IoTruncated (short payload).
ImageField load_image(const std::string& path);

/// Writes P6 for k = 3 and P5 for k = 1 after clamping to [0, 1], with
/// byte = floor(255 v + 1/2). Throws IoWrite when the file cannot be written.
void save_image(const ImageField& field, const std::string& path);

/// 10 log10(1 / MSE) over all pixels and channels, capped at kPsnrCap.
double psnr(const ImageField& a, const ImageField& b);

}  // namespace relaxdiff

#endif  // RELAXDIFF_IMAGE_IO_HPP
