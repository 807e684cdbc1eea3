#include "riesz/field_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace riesz {

namespace {

constexpr char kMagic[4] = {'R', 'Z', 'F', '1'};

static_assert(std::endian::native == std::endian::little,
              "serialization assumes a little-endian host");

void write_u32(std::ostream& os, std::uint32_t v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

std::uint32_t read_u32(std::istream& is) {
    std::uint32_t v = 0;
    is.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
}

}  // namespace

void save_field(const SampledField& f, const std::string& path,
                std::optional<std::uint64_t> seed) {
    nlohmann::json header;
    header["dim"] = f.dim;
    header["L"] = f.L;
    header["N"] = f.N;
    header["space"] = (f.space == Space::physical) ? "physical" : "frequency";
    if (seed) header["seed"] = *seed;
    const std::string head = header.dump();

    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("save_field: cannot open " + path);
    os.write(kMagic, 4);
    write_u32(os, static_cast<std::uint32_t>(head.size()));
    os.write(head.data(), static_cast<std::streamsize>(head.size()));
    os.write(reinterpret_cast<const char*>(f.values.data()),
             static_cast<std::streamsize>(f.values.size() * sizeof(std::complex<double>)));
    if (!os) throw std::runtime_error("save_field: write failed for " + path);
}

SampledField load_field(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("load_field: cannot open " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("load_field: bad magic in " + path);
    std::uint32_t hlen = read_u32(is);
    std::string head(hlen, '\0');
    is.read(head.data(), hlen);
    if (!is) throw std::runtime_error("load_field: truncated header in " + path);
    auto header = nlohmann::json::parse(head);

    SampledField f = make_field(header.at("dim").get<int>(), header.at("L").get<double>(),
                                header.at("N").get<int>(),
                                header.at("space").get<std::string>() == "physical"
                                    ? Space::physical
                                    : Space::frequency);
    is.read(reinterpret_cast<char*>(f.values.data()),
            static_cast<std::streamsize>(f.values.size() * sizeof(std::complex<double>)));
    if (!is) throw std::runtime_error("load_field: truncated payload in " + path);
    return f;
}

}  // namespace riesz
