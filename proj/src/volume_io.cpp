#include "saltdel/volume_io.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

namespace saltdel {
namespace {

std::map<std::string, std::string> read_header(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open header: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw IoError("malformed header line: " + line);
        kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return kv;
}

Dims parse_dims(const std::string& s) {
    Dims d;
    char lb = 0, c1 = 0, c2 = 0, rb = 0;
    std::istringstream ss(s);
    ss >> lb >> d.m >> c1 >> d.n >> c2 >> d.k >> rb;
    if (!ss || lb != '[' || c1 != ',' || c2 != ',' || rb != ']')
        throw IoError("malformed dims: " + s);
    if (!d.valid()) throw IoError("non-positive dims: " + s);
    // overflow / addressability guard
    const std::size_t limit = std::size_t(1) << 34;
    if (static_cast<std::size_t>(d.m) > limit / d.n ||
        static_cast<std::size_t>(d.m) * d.n > limit / d.k)
        throw IoError("dims exceed addressable memory: " + s);
    return d;
}

struct HeaderInfo {
    Dims dims;
    std::string dtype;
    VolumeMeta meta;
};

HeaderInfo parse_header(const std::string& path) {
    auto kv = read_header(path);
    if (!kv.count("dims") || !kv.count("dtype")) throw IoError("header missing dims/dtype: " + path);
    HeaderInfo h;
    h.dims = parse_dims(kv.at("dims"));
    h.dtype = kv.at("dtype");
    if (kv.count("order") && kv.at("order") != "mnk")
        throw IoError("unsupported storage order: " + kv.at("order"));
    if (kv.count("start_ms")) h.meta.start_ms = std::stod(kv.at("start_ms"));
    if (kv.count("step_ms")) h.meta.step_ms = std::stod(kv.at("step_ms"));
    return h;
}

std::vector<char> read_raw(const std::string& path, std::size_t expected_bytes) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open data file: " + path);
    in.seekg(0, std::ios::end);
    auto bytes = static_cast<std::size_t>(in.tellg());
    if (bytes != expected_bytes)
        throw IoError("data size mismatch in " + path + ": got " + std::to_string(bytes) +
                      " bytes, expected " + std::to_string(expected_bytes));
    in.seekg(0);
    std::vector<char> buf(bytes);
    in.read(buf.data(), static_cast<std::streamsize>(bytes));
    if (!in) throw IoError("short read: " + path);
    return buf;
}

void write_header(const std::string& path, const Dims& d, const std::string& dtype,
                  const VolumeMeta& meta) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open header for write: " + path);
    out << "dims=[" << d.m << "," << d.n << "," << d.k << "]\n";
    out << "dtype=" << dtype << "\n";
    out << "order=mnk\n";
    if (meta.start_ms) out << "start_ms=" << *meta.start_ms << "\n";
    if (meta.step_ms) out << "step_ms=" << *meta.step_ms << "\n";
    if (!out) throw IoError("header write failed: " + path);
}

}  // namespace

SeismicVolume load_volume(const std::string& path_data, const std::string& path_header) {
    auto h = parse_header(path_header);
    if (h.dtype != "f32le") throw IoError("expected dtype f32le, got " + h.dtype);
    auto raw = read_raw(path_data, h.dims.size() * sizeof(float));
    SeismicVolume v;
    v.dims = h.dims;
    v.meta = h.meta;
    v.samples.resize(h.dims.size());
    std::memcpy(v.samples.data(), raw.data(), raw.size());
    for (std::size_t i = 0; i < v.samples.size(); ++i)
        if (!std::isfinite(v.samples[i]))
            throw IoError("non-finite sample at linear index " + std::to_string(i));
    return v;
}

void save_volume(const SeismicVolume& v, const std::string& path_data,
                 const std::string& path_header) {
    write_header(path_header, v.dims, "f32le", v.meta);
    std::ofstream out(path_data, std::ios::binary);
    if (!out) throw IoError("cannot open data file for write: " + path_data);
    out.write(reinterpret_cast<const char*>(v.samples.data()),
              static_cast<std::streamsize>(v.samples.size() * sizeof(float)));
    if (!out) throw IoError("data write failed: " + path_data);
}

BinaryVolume load_mask(const std::string& path_data, const std::string& path_header) {
    auto h = parse_header(path_header);
    if (h.dtype != "u8") throw IoError("expected dtype u8, got " + h.dtype);
    auto raw = read_raw(path_data, h.dims.size());
    BinaryVolume m;
    m.dims = h.dims;
    m.bits.resize(h.dims.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        auto b = static_cast<std::uint8_t>(raw[i]);
        if (b > 1) throw IoError("mask value not in {0,1} at index " + std::to_string(i));
        m.bits[i] = b;
    }
    return m;
}

void save_mask(const BinaryVolume& v, const std::string& path_data,
               const std::string& path_header) {
    write_header(path_header, v.dims, "u8", {});
    std::ofstream out(path_data, std::ios::binary);
    if (!out) throw IoError("cannot open data file for write: " + path_data);
    out.write(reinterpret_cast<const char*>(v.bits.data()),
              static_cast<std::streamsize>(v.bits.size()));
    if (!out) throw IoError("data write failed: " + path_data);
}

}  // namespace saltdel
