#include "relaxdiff/image_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <vector>

#include "relaxdiff/error.hpp"

namespace relaxdiff {

namespace {

class HeaderReader {
public:
    HeaderReader(const std::vector<unsigned char>& bytes, const std::string& path) : bytes_(bytes), path_(path) {}

    std::string magic() {
        if (bytes_.size() < 2) fail("file too short for a header");
        pos_ = 2;
        return std::string(bytes_.begin(), bytes_.begin() + 2);
    }

    int number() {
        skip_space_and_comments();
        if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) fail("expected a decimal number in header");
        long value = 0;
        while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
            value = value * 10 + (bytes_[pos_] - '0');
            if (value > 1'000'000) fail("header value out of range");
            ++pos_;
        }
        return static_cast<int>(value);
    }

    // Exactly one whitespace byte separates maxval from the raster.
    std::size_t payload_offset() {
        if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) fail("missing whitespace after maxval");
        return pos_ + 1;
    }

    [[noreturn]] void fail(const std::string& why) const {
        throw IoError(ErrorKind::IoFormat, "malformed image header in '" + path_ + "': " + why);
    }

private:
    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            if (std::isspace(bytes_[pos_])) {
                ++pos_;
            } else if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    const std::vector<unsigned char>& bytes_;
    const std::string& path_;
    std::size_t pos_ = 0;
};

}  // namespace

ImageField load_image(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(ErrorKind::IoMissing, "cannot open image '" + path + "'");
    const std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    HeaderReader header(bytes, path);
    const std::string magic = header.magic();
    int channels = 0;
    if (magic == "P6") {
        channels = 3;
    } else if (magic == "P5") {
        channels = 1;
    } else {
        header.fail("unsupported magic '" + magic + "' (need P5 or P6)");
    }
    const int width = header.number();
    const int height = header.number();
    const int maxval = header.number();
    if (width < 1 || height < 1) header.fail("zero image dimension");
    if (maxval != 255) header.fail("maxval must be 255");
    const std::size_t offset = header.payload_offset();

    const std::size_t expected = static_cast<std::size_t>(width) * height * channels;
    if (bytes.size() < offset + expected) {
        throw IoError(ErrorKind::IoTruncated, "truncated image '" + path + "': expected " + std::to_string(expected) +
                                                  " payload bytes, found " +
                                                  std::to_string(bytes.size() > offset ? bytes.size() - offset : 0));
    }
    GridSpec grid;
    grid.dims = {width, height};
    grid.channels = channels;
    ImageField field;
    field.grid = grid;
    field.values.resize(expected);
    for (std::size_t i = 0; i < expected; ++i) field.values[i] = bytes[offset + i] / 255.0;
    return field;
}

void save_image(const ImageField& field, const std::string& path) {
    const int k = field.grid.channels;
    if (field.grid.axes() != 2 || (k != 1 && k != 3)) {
        throw DimensionError("save_image: need a 2-D field with 1 or 3 channels");
    }
    std::string data = (k == 3 ? "P6\n" : "P5\n") + std::to_string(field.grid.dims[0]) + " " +
                       std::to_string(field.grid.dims[1]) + "\n255\n";
    data.reserve(data.size() + field.values.size());
    for (double v : field.values) {
        const double clamped = std::clamp(v, 0.0, 1.0);
        data.push_back(static_cast<char>(static_cast<unsigned char>(std::floor(255.0 * clamped + 0.5))));
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(ErrorKind::IoWrite, "cannot open '" + path + "' for writing");
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) throw IoError(ErrorKind::IoWrite, "failed writing '" + path + "'");
}

double psnr(const ImageField& a, const ImageField& b) {
    if (!(a.grid.dims == b.grid.dims) || a.grid.channels != b.grid.channels) {
        throw DimensionError("psnr: images differ in shape");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        const double diff = a.values[i] - b.values[i];
        sum += diff * diff;
    }
    const double mse = sum / static_cast<double>(a.values.size());
    if (mse == 0.0) return kPsnrCap;
    return std::min(kPsnrCap, 10.0 * std::log10(1.0 / mse));
}

}  // namespace relaxdiff
