#include "flatcert/mesh.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace flatcert {

namespace {

struct Corner {
    int face;
    int position;
    int prev;
    int next;
};

// Links corners of one vertex through shared edges. Only neighbours met by
// exactly two corners are traversable; anything else breaks the cycle.
std::vector<StarCycle> build_star_cycles(const std::vector<Corner>& corners)
{
    std::map<int, std::vector<int>> by_neighbor;
    for (int i = 0; i < static_cast<int>(corners.size()); ++i) {
        by_neighbor[corners[i].prev].push_back(i);
        by_neighbor[corners[i].next].push_back(i);
    }
    for (const auto& [u, list] : by_neighbor)
        if (list.size() != 2) return {};

    std::vector<bool> used(corners.size(), false);
    std::vector<StarCycle> cycles;
    for (int start = 0; start < static_cast<int>(corners.size()); ++start) {
        if (used[start]) continue;
        StarCycle cycle;
        int current = start;
        int from = corners[start].prev;
        while (!used[current]) {
            used[current] = true;
            const Corner& c = corners[current];
            const int to = (c.prev == from) ? c.next : c.prev;
            cycle.push_back({c.face, c.position, from, to});
            const auto& pair = by_neighbor[to];
            current = (pair[0] == current) ? pair[1] : pair[0];
            from = to;
        }
        cycles.push_back(std::move(cycle));
    }
    return cycles;
}

}  // namespace

HalfEdgeMesh HalfEdgeMesh::build(const CellComplex& complex)
{
    HalfEdgeMesh mesh;
    mesh.complex_ = complex;
    const auto& faces = complex.faces();

    std::map<EdgeKey, std::vector<int>> edge_to_half_edges;
    mesh.face_offsets_.reserve(faces.size() + 1);
    for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
        const int begin = static_cast<int>(mesh.half_edges_.size());
        mesh.face_offsets_.push_back(begin);
        const int n = static_cast<int>(faces[f].size());
        for (int i = 0; i < n; ++i) {
            mesh.half_edges_.push_back({faces[f][i], f, begin + (i + 1) % n, -1});
            edge_to_half_edges[EdgeKey(faces[f][i], faces[f][(i + 1) % n])].push_back(begin + i);
        }
    }
    mesh.face_offsets_.push_back(static_cast<int>(mesh.half_edges_.size()));

    for (const auto& [key, hes] : edge_to_half_edges) {
        mesh.edges_.push_back(key);
        std::vector<int> fs;
        for (int h : hes) fs.push_back(mesh.half_edges_[h].face);
        mesh.edge_faces_.push_back(std::move(fs));
        if (hes.size() == 2) {
            mesh.half_edges_[hes[0]].twin = hes[1];
            mesh.half_edges_[hes[1]].twin = hes[0];
        }
    }

    std::vector<std::vector<Corner>> corners(complex.num_vertices());
    for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
        const int n = static_cast<int>(faces[f].size());
        for (int i = 0; i < n; ++i)
            corners[faces[f][i]].push_back({f, i, faces[f][(i + n - 1) % n], faces[f][(i + 1) % n]});
    }
    mesh.stars_.reserve(corners.size());
    for (const auto& cs : corners) mesh.stars_.push_back(build_star_cycles(cs));
    return mesh;
}

int HalfEdgeMesh::edge_index(EdgeKey key) const
{
    const auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
    if (it == edges_.end() || *it != key) return -1;
    return static_cast<int>(it - edges_.begin());
}

const StarCycle& HalfEdgeMesh::vertex_star(int vertex) const
{
    const auto& cycles = stars_.at(vertex);
    if (cycles.size() != 1)
        throw std::logic_error("vertex " + std::to_string(vertex) + " has no single star cycle");
    return cycles.front();
}

const char* to_string(ManifoldDiagnostic::Kind kind)
{
    switch (kind) {
    case ManifoldDiagnostic::Kind::BoundaryEdge: return "boundary_edge";
    case ManifoldDiagnostic::Kind::NonManifoldEdge: return "non_manifold_edge";
    case ManifoldDiagnostic::Kind::PinchedVertex: return "pinched_vertex";
    case ManifoldDiagnostic::Kind::IsolatedVertex: return "isolated_vertex";
    }
    return "unknown";
}

std::string ManifoldDiagnostic::describe() const
{
    std::ostringstream out;
    out << to_string(kind);
    if (kind == Kind::BoundaryEdge || kind == Kind::NonManifoldEdge)
        out << " (" << edge.a << ", " << edge.b << ") used " << count << " time(s)";
    else if (kind == Kind::PinchedVertex)
        out << " " << vertex << " with " << count << " star cycles";
    else
        out << " " << vertex;
    return out.str();
}

ManifoldCheck check_closed_manifold(const CellComplex& complex)
{
    ManifoldCheck result;
    HalfEdgeMesh mesh = HalfEdgeMesh::build(complex);

    std::vector<bool> vertex_on_bad_edge(complex.num_vertices(), false);
    for (int e = 0; e < mesh.num_edges(); ++e) {
        const int count = static_cast<int>(mesh.edge_faces()[e].size());
        if (count == 2) continue;
        const EdgeKey key = mesh.edges()[e];
        result.diagnostics.push_back({count == 1 ? ManifoldDiagnostic::Kind::BoundaryEdge
                                                 : ManifoldDiagnostic::Kind::NonManifoldEdge,
                                      key, -1, count});
        vertex_on_bad_edge[key.a] = vertex_on_bad_edge[key.b] = true;
    }

    std::vector<int> degree(complex.num_vertices(), 0);
    for (const Face& face : complex.faces())
        for (int v : face) ++degree[v];

    for (int v = 0; v < complex.num_vertices(); ++v) {
        if (degree[v] == 0) {
            result.diagnostics.push_back({ManifoldDiagnostic::Kind::IsolatedVertex, {}, v, 0});
            continue;
        }
        if (vertex_on_bad_edge[v]) continue;
        const int cycles = static_cast<int>(mesh.star_cycles(v).size());
        if (cycles != 1)
            result.diagnostics.push_back({ManifoldDiagnostic::Kind::PinchedVertex, {}, v, cycles});
    }

    if (result.diagnostics.empty()) result.mesh = std::move(mesh);
    return result;
}

int euler_characteristic(const HalfEdgeMesh& mesh)
{
    return mesh.num_vertices() - mesh.num_edges() + mesh.num_faces();
}

Components connected_components(const HalfEdgeMesh& mesh)
{
    const int nf = mesh.num_faces();
    std::vector<int> parent(nf);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& faces : mesh.edge_faces())
        for (std::size_t i = 1; i < faces.size(); ++i) {
            const int a = find(faces[0]), b = find(faces[i]);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }

    Components comps;
    comps.face_label.assign(nf, -1);
    std::map<int, int> root_label;
    for (int f = 0; f < nf; ++f) {
        const int root = find(f);
        auto [it, inserted] = root_label.try_emplace(root, comps.count);
        if (inserted) ++comps.count;
        comps.face_label[f] = it->second;
    }
    return comps;
}

Orientability orientability(const HalfEdgeMesh& mesh)
{
    const Components comps = connected_components(mesh);
    Orientability result;
    result.per_component.assign(comps.count, true);
    result.face_sign.assign(mesh.num_faces(), 0);

    const auto& hes = mesh.half_edges();
    auto he_direction = [&](int h) {
        return std::pair{hes[h].origin, hes[hes[h].next].origin};
    };

    for (int seed = 0; seed < mesh.num_faces(); ++seed) {
        if (result.face_sign[seed] != 0) continue;
        result.face_sign[seed] = 1;
        std::queue<int> queue;
        queue.push(seed);
        while (!queue.empty()) {
            const int f = queue.front();
            queue.pop();
            for (int h = mesh.face_begin(f); h < mesh.face_begin(f + 1); ++h) {
                const int t = hes[h].twin;
                if (t < 0) continue;
                const int g = hes[t].face;
                // Twin half-edges running the same way need opposite face signs.
                const bool same_way = he_direction(h) == he_direction(t);
                const int wanted = same_way ? -result.face_sign[f] : result.face_sign[f];
                if (result.face_sign[g] == 0) {
                    result.face_sign[g] = wanted;
                    queue.push(g);
                } else if (result.face_sign[g] != wanted) {
                    result.per_component[comps.face_label[f]] = false;
                }
            }
        }
    }
    result.orientable = std::all_of(result.per_component.begin(), result.per_component.end(),
                                    [](bool b) { return b; });
    return result;
}

}  // namespace flatcert
