#pragma once

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <geocodec/geo.hpp>
#include <geocodec/robocode.hpp>

namespace testutil {

// Scratch directory removed at scope exit.
class TempDir {
  public:
    explicit TempDir(const std::string& tag) {
        dir_ = std::filesystem::temp_directory_path() /
               ("geocodec_" + tag + "_" + std::to_string(::getpid()));
        std::filesystem::create_directories(dir_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(dir_, ec);
    }
    std::filesystem::path path(const std::string& name) const { return dir_ / name; }

  private:
    std::filesystem::path dir_;
};

inline void write_file(const std::filesystem::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    out << content;
}

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Straight street of the given length starting at `start` toward `bearing`.
inline geocodec::robo::RawStreet straight_street(const geocodec::GeoPoint& start,
                                                 double bearing_deg, double length_m,
                                                 std::string name = {}) {
    geocodec::robo::RawStreet s;
    s.polyline = {start, geocodec::destination(start, bearing_deg, length_m)};
    if (!name.empty()) s.name = std::move(name);
    return s;
}

inline geocodec::robo::CityConfig dhule_config() {
    return {"Dhule", "MhIn", geocodec::GeoPoint(20.9042, 74.7749)};
}

}  // namespace testutil
