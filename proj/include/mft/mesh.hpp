#pragma once

#include <cstdio>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "mft/detector.hpp"
#include "mft/geometry.hpp"
#include "mft/parallel.hpp"
#include "mft/surfaces.hpp"

namespace mft {

/// Result of a mesh export: counts plus the holes left by rejected nodes.
struct MeshStats {
    int vertices = 0;
    int triangles = 0;
    int holes = 0;
    std::map<std::string, int> hole_loci;           // locus message -> count
    std::vector<std::pair<int, int>> hole_nodes;    // (i, j) grid indices
};

namespace detail {

inline void append_g17(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

} // namespace detail

/// Writes a triangulated OBJ of position values (`v x y z` lines, `f`
/// triangles in row-major grid order) and a per-vertex CSV
/// `s,theta,x1,x2,x3,K,H`.  Grid nodes on excluded loci are skipped; the
/// triangles touching them are dropped and reported as holes.
inline MeshStats write_mesh(const SurfaceFamily& fam, const GridSpec& grid,
                            const std::string& obj_path, const std::string& csv_path) {
    if (grid.ns < 2 || grid.nt < 2) throw Error("write_mesh: grid must be at least 2x2");
    const std::size_t n = static_cast<std::size_t>(grid.ns) * static_cast<std::size_t>(grid.nt);

    struct Node {
        bool ok = false;
        Vec3M x;
        double K = 0, H = 0;
        std::string locus;
    };
    std::vector<Node> nodes(n);
    parallel_for(n, [&](std::size_t idx) {
        const int i = static_cast<int>(idx) / grid.nt;
        const int j = static_cast<int>(idx) % grid.nt;
        Node& nd = nodes[idx];
        try {
            const SurfaceJet sj = fam.eval_chart({grid.s_at(i), grid.t_at(j)});
            const FormCoefficients fc = fundamental_forms(sj);
            const CurvatureData cd = curvatures(fc);
            nd.x = {sj.x1.value(), sj.x2.value(), sj.x3.value()};
            nd.K = cd.K;
            nd.H = cd.H;
            nd.ok = true;
        } catch (const Error& e) {
            nd.locus = e.what();
        }
    });

    MeshStats stats;
    std::vector<int> vertex_id(n, 0); // 1-based OBJ index; 0 = hole
    std::string obj, csv = "s,theta,x1,x2,x3,K,H\n";
    int next = 1;
    for (int i = 0; i < grid.ns; ++i) {
        for (int j = 0; j < grid.nt; ++j) {
            const std::size_t idx = static_cast<std::size_t>(i) * grid.nt + j;
            const Node& nd = nodes[idx];
            if (!nd.ok) {
                ++stats.holes;
                ++stats.hole_loci[nd.locus];
                stats.hole_nodes.emplace_back(i, j);
                continue;
            }
            vertex_id[idx] = next++;
            obj += "v ";
            detail::append_g17(obj, nd.x.x1);
            obj += ' ';
            detail::append_g17(obj, nd.x.x2);
            obj += ' ';
            detail::append_g17(obj, nd.x.x3);
            obj += '\n';
            detail::append_g17(csv, grid.s_at(i));
            csv += ',';
            detail::append_g17(csv, grid.t_at(j));
            csv += ',';
            detail::append_g17(csv, nd.x.x1);
            csv += ',';
            detail::append_g17(csv, nd.x.x2);
            csv += ',';
            detail::append_g17(csv, nd.x.x3);
            csv += ',';
            detail::append_g17(csv, nd.K);
            csv += ',';
            detail::append_g17(csv, nd.H);
            csv += '\n';
        }
    }
    stats.vertices = next - 1;

    auto id = [&](int i, int j) { return vertex_id[static_cast<std::size_t>(i) * grid.nt + j]; };
    for (int i = 0; i + 1 < grid.ns; ++i) {
        for (int j = 0; j + 1 < grid.nt; ++j) {
            const int a = id(i, j), b = id(i + 1, j), c = id(i, j + 1), d = id(i + 1, j + 1);
            if (a && b && c) {
                obj += "f " + std::to_string(a) + ' ' + std::to_string(b) + ' ' +
                       std::to_string(c) + '\n';
                ++stats.triangles;
            }
            if (b && d && c) {
                obj += "f " + std::to_string(b) + ' ' + std::to_string(d) + ' ' +
                       std::to_string(c) + '\n';
                ++stats.triangles;
            }
        }
    }

    std::ofstream obj_out(obj_path, std::ios::binary);
    if (!obj_out) throw Error("cannot open " + obj_path + " for writing");
    obj_out << obj;
    std::ofstream csv_out(csv_path, std::ios::binary);
    if (!csv_out) throw Error("cannot open " + csv_path + " for writing");
    csv_out << csv;
    return stats;
}

} // namespace mft
