#include <geocodec/short_code.hpp>

#include <cctype>
#include <ctime>
#include <fstream>
#include <limits>

#include <nlohmann/json.hpp>

#include <geocodec/errors.hpp>

namespace geocodec::shortcode {

using nlohmann::json;

namespace {

std::uint64_t namespace_capacity(std::uint64_t alphabet_size, int length) {
    std::uint64_t cap = 1;
    for (int i = 0; i < length; ++i) {
        if (cap > std::numeric_limits<std::uint64_t>::max() / alphabet_size)
            return std::numeric_limits<std::uint64_t>::max();  // effectively inexhaustible
        cap *= alphabet_size;
    }
    return cap;
}

bool valid_code_char(char c) {
    return (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

std::string canonicalize(std::string_view code) {
    std::string out;
    out.reserve(code.size());
    for (const char c : code)
        out.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    return out;
}

}  // namespace

Registry::Registry(int code_length, std::uint64_t seed, std::string_view alphabet)
    : code_length_(code_length),
      seed_(seed),
      alphabet_(alphabet),
      capacity_(0),
      rng_(seed) {
    if (code_length_ < 1) throw DomainError("registry: code length must be positive");
    if (alphabet_.empty()) throw DomainError("registry: alphabet must be non-empty");
    for (const char c : alphabet_)
        if (!valid_code_char(c)) throw DomainError("registry: alphabet must be [A-Z0-9]");
    capacity_ = namespace_capacity(alphabet_.size(), code_length_);
}

std::string Registry::draw_code() {
    std::string code(static_cast<std::size_t>(code_length_), '\0');
    for (char& c : code)
        c = alphabet_[static_cast<std::size_t>(rng_.below(alphabet_.size()))];
    return code;
}

ShortCodeRecord Registry::insert(std::string code, const GeoPoint& p) {
    ShortCodeRecord rec{std::move(code), p, static_cast<std::int64_t>(std::time(nullptr))};
    const auto [it, inserted] = records_.emplace(rec.code, rec);
    if (!inserted) throw ConflictError("registry: code " + rec.code + " already taken");
    if (it->second.code.size() == static_cast<std::size_t>(code_length_)) ++exact_length_count_;
    return it->second;
}

ShortCodeRecord Registry::allocate(const GeoPoint& p) {
    if (exact_length_count_ >= capacity_)
        throw ExhaustedError("registry: all " + std::to_string(capacity_) +
                             " codes of length " + std::to_string(code_length_) + " are taken");
    std::string code = draw_code();
    while (records_.count(code) != 0) code = draw_code();  // rejection-resample
    return insert(std::move(code), p);
}

ShortCodeRecord Registry::allocate_vanity(const GeoPoint& p, std::string_view code) {
    std::string canon = canonicalize(code);
    if (canon.size() < static_cast<std::size_t>(code_length_))
        throw DomainError("registry: vanity code \"" + canon + "\" shorter than minimum length " +
                          std::to_string(code_length_));
    for (const char c : canon)
        if (!valid_code_char(c))
            throw DomainError("registry: vanity code \"" + std::string(code) +
                              "\" contains characters outside [A-Z0-9]");
    return insert(std::move(canon), p);
}

GeoPoint Registry::resolve(std::string_view code) const {
    const auto it = records_.find(canonicalize(code));
    if (it == records_.end())
        throw NotFoundError("registry: code " + canonicalize(code) + " not found");
    return it->second.point;
}

void Registry::save(const std::filesystem::path& file) const {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw IoError("registry: cannot open " + file.string() + " for writing");
    json header{{"code_length", code_length_}, {"draws", rng_.draws()}, {"seed", seed_}};
    out << header.dump() << '\n';
    for (const auto& [code, rec] : records_) {
        json line{{"code", rec.code},
                  {"created", rec.created},
                  {"lat", rec.point.lat},
                  {"lng", rec.point.lng}};
        out << line.dump() << '\n';
    }
    if (!out) throw IoError("registry: write to " + file.string() + " failed");
}

Registry Registry::load(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw IoError("registry: cannot open " + file.string());
    std::string line;
    if (!std::getline(in, line)) throw ParseError("registry: missing header at line 1");

    std::uint64_t draws = 0;
    Registry reg = [&] {
        try {
            const json header = json::parse(line);
            draws = header.at("draws").get<std::uint64_t>();
            return Registry(header.at("code_length").get<int>(),
                            header.at("seed").get<std::uint64_t>());
        } catch (const json::exception& e) {
            throw ParseError(std::string("registry: corrupt header at line 1: ") + e.what());
        }
    }();

    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        try {
            const json rec = json::parse(line);
            ShortCodeRecord r{rec.at("code").get<std::string>(),
                              GeoPoint(rec.at("lat").get<double>(), rec.at("lng").get<double>()),
                              rec.at("created").get<std::int64_t>()};
            const std::string code = r.code;
            const auto [it, inserted] = reg.records_.emplace(code, std::move(r));
            if (!inserted)
                throw ParseError("registry: duplicate code at line " + std::to_string(lineno));
            if (code.size() == static_cast<std::size_t>(reg.code_length_))
                ++reg.exact_length_count_;
        } catch (const json::exception& e) {
            throw ParseError("registry: corrupt record at line " + std::to_string(lineno) + ": " +
                             e.what());
        }
    }
    reg.rng_.discard(draws);  // resume the allocation stream exactly
    return reg;
}

}  // namespace geocodec::shortcode
