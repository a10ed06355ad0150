#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include "oracles.hpp"
#include "relaxdiff/error.hpp"
#include "relaxdiff/image_io.hpp"

namespace relaxdiff {
namespace {

namespace fs = std::filesystem;

class ImageIo : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("relaxdiff_io_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string write_bytes(const std::string& name, const std::string& bytes) {
        const fs::path p = dir_ / name;
        std::ofstream(p, std::ios::binary) << bytes;
        return p.string();
    }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    static std::string slurp(const std::string& p) {
        std::ifstream in(p, std::ios::binary);
        return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    }

    fs::path dir_;
};

TEST_F(ImageIo, LoadsWhiteColourImage) {
    const std::string p = write_bytes("white.ppm", "P6\n2 2\n255\n" + std::string(12, '\xff'));
    const ImageField u = load_image(p);
    EXPECT_EQ(u.grid.dims, (std::vector<int>{2, 2}));
    EXPECT_EQ(u.grid.channels, 3);
    for (double v : u.values) EXPECT_EQ(v, 1.0);
}

TEST_F(ImageIo, LoadsGreyImageWithComment) {
    const std::string bytes = std::string("P5\n# comment line\n2 2\n255\n") + char(0) + char(128) + char(255) + char(64);
    const ImageField u = load_image(write_bytes("grey.pgm", bytes));
    EXPECT_EQ(u.grid.channels, 1);
    EXPECT_EQ(u.values, (std::vector<double>{0.0, 128.0 / 255.0, 1.0, 64.0 / 255.0}));
}

TEST_F(ImageIo, WidthIsAxisZero) {
    std::string bytes = "P5\n3 2\n255\n";
    for (int i = 0; i < 6; ++i) bytes += char(i);
    const ImageField u = load_image(write_bytes("wide.pgm", bytes));
    EXPECT_EQ(u.grid.dims, (std::vector<int>{3, 2}));
    EXPECT_EQ(u(1, 0), 1.0 / 255.0);
    EXPECT_EQ(u(3, 0), 3.0 / 255.0);
}

TEST_F(ImageIo, ErrorKinds) {
    auto kind_of = [](const std::string& p) {
        try {
            load_image(p);
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::Invariant;
    };
    EXPECT_EQ(kind_of(path("absent.ppm")), ErrorKind::IoMissing);
    EXPECT_EQ(kind_of(write_bytes("short.ppm", "P6\n2 2\n255\n" + std::string(11, 'a'))), ErrorKind::IoTruncated);
    EXPECT_EQ(kind_of(write_bytes("magic.ppm", "P3\n2 2\n255\n1 2 3")), ErrorKind::IoFormat);
    EXPECT_EQ(kind_of(write_bytes("maxval.ppm", "P6\n2 2\n65535\n" + std::string(24, 'a'))), ErrorKind::IoFormat);
    EXPECT_EQ(kind_of(write_bytes("dims.ppm", "P6\nx 2\n255\n")), ErrorKind::IoFormat);
    EXPECT_THROW(load_image(path("absent.ppm")), IoError);
}

TEST_F(ImageIo, SaveQuantizesAndClamps) {
    const GridSpec g({2, 2}, 1);
    save_image(ImageField(g, {0.1, 0.2, 0.5, 1.2}), path("q.pgm"));
    const std::string bytes = slurp(path("q.pgm"));
    ASSERT_GE(bytes.size(), 2u);
    EXPECT_EQ(static_cast<unsigned char>(bytes[bytes.size() - 2]), 128);
    EXPECT_EQ(static_cast<unsigned char>(bytes[bytes.size() - 1]), 255);
    save_image(ImageField(g, {0.0, 0.0, -0.3, 0.0}), path("z.pgm"));
    const std::string zeros = slurp(path("z.pgm"));
    EXPECT_EQ(zeros.substr(zeros.size() - 2), std::string(2, '\0'));
}

TEST_F(ImageIo, RoundTripIsIdempotent) {
    const GridSpec g({9, 7}, 3);
    ImageField u = testing::random_field(g, 3, 0.5);
    for (double& v : u.values) v += 0.5;
    save_image(u, path("a.ppm"));
    const ImageField once = load_image(path("a.ppm"));
    save_image(once, path("b.ppm"));
    EXPECT_EQ(slurp(path("a.ppm")), slurp(path("b.ppm")));
    EXPECT_EQ(load_image(path("b.ppm")).values, once.values);
    for (std::size_t i = 0; i < u.values.size(); ++i) EXPECT_LE(std::abs(once.values[i] - u.values[i]), 0.5 / 255.0 + 1e-12);
}

TEST_F(ImageIo, SaveRejectsUnwritablePath) {
    const GridSpec g({2, 2}, 1);
    EXPECT_THROW(save_image(ImageField(g), path("missing_dir/x.pgm")), IoError);
}

TEST(Psnr, Examples) {
    const GridSpec g({8, 8}, 3);
    const ImageField a = testing::random_field(g, 4);
    EXPECT_EQ(psnr(a, a), kPsnrCap);
    ImageField b = a;
    for (double& v : b.values) v += 0.1;
    EXPECT_NEAR(psnr(a, b), 20.0, 1e-9);
    EXPECT_EQ(psnr(a, b), psnr(b, a));
    EXPECT_THROW(psnr(a, ImageField(GridSpec({8, 8}, 1))), DimensionError);
}

}  // namespace
}  // namespace relaxdiff
