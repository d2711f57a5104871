#pragma once

// Field file format: a JSON object
//   { "dims":[nx,ny,nz], "spacing":[hx,hy,hz], "origin":[ox,oy,oz],
//     "kind":"vec3"|"mat3"|"rot3", "data":[...] }
// with data flattened x-fastest and each Mat3 as 9 row-major reals. Values
// are written with 17 significant digits so round-trips are bit-exact.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "cosserat/grid.hpp"

namespace cosserat {

namespace detail {

inline void append_real(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

inline std::string field_header(const Grid3& g, const std::string& kind) {
    std::string out = "{\n  \"dims\": [";
    out += std::to_string(g.dims[0]) + ", " + std::to_string(g.dims[1]) + ", " +
           std::to_string(g.dims[2]) + "],\n  \"spacing\": [";
    append_real(out, g.spacing[0]);
    out += ", ";
    append_real(out, g.spacing[1]);
    out += ", ";
    append_real(out, g.spacing[2]);
    out += "],\n  \"origin\": [";
    append_real(out, g.origin(0));
    out += ", ";
    append_real(out, g.origin(1));
    out += ", ";
    append_real(out, g.origin(2));
    out += "],\n  \"kind\": \"" + kind + "\",\n  \"data\": [";
    return out;
}

inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << text;
}

} // namespace detail

inline void write_field(const std::string& path, const VecField& f) {
    std::string out = detail::field_header(f.grid, "vec3");
    for (int n = 0; n < f.size(); ++n)
        for (int i = 0; i < 3; ++i) {
            if (n + i > 0) out += ", ";
            detail::append_real(out, f[n](i));
        }
    out += "]\n}\n";
    detail::write_text(path, out);
}

inline void write_field(const std::string& path, const MatField& f,
                        const std::string& kind = "mat3") {
    std::string out = detail::field_header(f.grid, kind);
    bool first = true;
    for (int n = 0; n < f.size(); ++n)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                if (!first) out += ", ";
                first = false;
                detail::append_real(out, f[n](i, j));
            }
    out += "]\n}\n";
    detail::write_text(path, out);
}

struct FieldFile {
    std::string kind;
    VecField vec; // populated when kind == "vec3"
    MatField mat; // populated when kind is "mat3" or "rot3"
};

inline FieldFile read_field(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open for reading: " + path);
    nlohmann::json j;
    f >> j;

    Grid3 g({j.at("dims")[0], j.at("dims")[1], j.at("dims")[2]},
            {j.at("spacing")[0], j.at("spacing")[1], j.at("spacing")[2]},
            Vec3(j.at("origin")[0], j.at("origin")[1], j.at("origin")[2]));
    const auto& data = j.at("data");

    FieldFile out;
    out.kind = j.at("kind").get<std::string>();
    if (out.kind == "vec3") {
        if (int(data.size()) != 3 * g.num_nodes())
            throw std::runtime_error("field file: data length mismatch");
        out.vec = VecField(g);
        for (int n = 0; n < g.num_nodes(); ++n)
            for (int i = 0; i < 3; ++i)
                out.vec[n](i) = data[size_t(3 * n + i)].get<double>();
    } else if (out.kind == "mat3" || out.kind == "rot3") {
        if (int(data.size()) != 9 * g.num_nodes())
            throw std::runtime_error("field file: data length mismatch");
        out.mat = MatField(g);
        for (int n = 0; n < g.num_nodes(); ++n)
            for (int i = 0; i < 3; ++i)
                for (int jj = 0; jj < 3; ++jj)
                    out.mat[n](i, jj) = data[size_t(9 * n + 3 * i + jj)].get<double>();
        if (out.kind == "rot3") require_rotations(out.mat);
    } else {
        throw std::runtime_error("field file: unknown kind '" + out.kind + "'");
    }
    return out;
}

} // namespace cosserat
