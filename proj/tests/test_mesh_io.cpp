#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "flatcert/corpus.hpp"
#include "flatcert/mesh_io.hpp"

using namespace flatcert;

namespace {

int error_line(const std::function<void()>& f)
{
    try {
        f();
    } catch (const MeshIoError& e) {
        return e.line();
    }
    return -1;
}

}  // namespace

TEST_CASE("read_off")
{
    std::istringstream in("OFF\n# tetrahedron\n4 4 6\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n3 0 2 1\n3 0 1 3\n3 0 3 2\n3 1 2 3\n");
    const CellComplex c = read_off(in);
    CHECK(c.num_vertices() == 4);
    CHECK(c.num_faces() == 4);
    CHECK(c.faces()[0] == Face{0, 2, 1});

    SUBCASE("counts on the header line and zero edge count")
    {
        std::istringstream one("OFF 3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 2\n");
        CHECK(read_off(one).num_faces() == 1);
    }
    SUBCASE("header claims more vertices than listed")
    {
        std::istringstream bad("OFF\n5 1 0\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n3 0 1 2\n");
        std::string message;
        try {
            read_off(bad);
        } catch (const MeshIoError& e) {
            message = e.what();
            CHECK(e.line() == 2);
        }
        CHECK(message.find("5 vertices") != std::string::npos);
    }
    SUBCASE("malformed lines carry their number")
    {
        CHECK(error_line([] {
            std::istringstream s("OFF\n3 1 0\n0 0 0\n1 zero 0\n0 1 0\n3 0 1 2\n");
            read_off(s);
        }) == 4);
        CHECK(error_line([] {
            std::istringstream s("OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 7\n");
            read_off(s);
        }) == 6);
        CHECK(error_line([] {
            std::istringstream s("PLY\n");
            read_off(s);
        }) == 1);
    }
}

TEST_CASE("read_obj")
{
    std::istringstream in("# quad\nv 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nvn 0 0 1\nf 1/1/1 2//1 3 -1\n");
    const CellComplex c = read_obj(in);
    CHECK(c.num_vertices() == 4);
    CHECK(c.faces()[0] == Face{0, 1, 2, 3});
    CHECK(error_line([] {
        std::istringstream s("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 4\n");
        read_obj(s);
    }) == 4);
}

TEST_CASE("read_pair")
{
    std::istringstream faces("1 2 3 4\n");
    std::istringstream verts("0 0 0\n1 0 0\n1 1 0\n0 1 0\n");
    const CellComplex c = read_pair(faces, verts);
    CHECK(c.faces()[0] == Face{0, 1, 2, 3});

    std::istringstream faces0("{0, 1, 2}\n");
    std::istringstream verts0("(0, 0, 0)\n[1, 0, 0]\n0 1 0\n");
    CHECK(read_pair(faces0, verts0, true).faces()[0] == Face{0, 1, 2});

    CHECK(error_line([] {
        std::istringstream f("1 2 3\n1 2\n");
        std::istringstream v("0 0 0\n1 0 0\n0 1 0\n");
        read_pair(f, v);
    }) == 2);
    CHECK(error_line([] {
        std::istringstream f("1 2 3\n");
        std::istringstream v("0 0 0\n1 0\n0 1 0\n");
        read_pair(f, v);
    }) == 2);
    CHECK_THROWS(([] {
        std::istringstream f("0 1 2\n");
        std::istringstream v("0 0 0\n1 0 0\n0 1 0\n");
        read_pair(f, v);
    }()));
}

TEST_CASE("format helpers")
{
    CHECK(parse_format("obj") == MeshFormat::Obj);
    CHECK_THROWS(parse_format("ply"));
    CHECK(format_from_extension("a/b.OFF") == MeshFormat::Off);
    CHECK_FALSE(format_from_extension("mesh.txt").has_value());
    CHECK(format_real(0.1) == "0.10000000000000001");
    CHECK(format_real(-2) == "-2");
}

TEST_CASE("write then read is the identity")
{
    const auto dir = std::filesystem::temp_directory_path() / "flatcert_io_test";
    std::filesystem::create_directories(dir);
    for (const auto& spec : default_corpus()) {
        CAPTURE(spec.name());
        const CellComplex c = generate(spec);
        for (MeshFormat fmt : {MeshFormat::Off, MeshFormat::Obj, MeshFormat::Pair}) {
            std::vector<std::string> paths;
            if (fmt == MeshFormat::Pair)
                paths = {(dir / "faces.txt").string(), (dir / "verts.txt").string()};
            else
                paths = {(dir / (std::string("mesh.") + to_string(fmt))).string()};
            write_mesh(paths, c, fmt);
            const CellComplex back = read_mesh(paths, fmt);
            CHECK(back.vertices() == c.vertices());
            CHECK(back.faces() == c.faces());
        }
    }
    std::filesystem::remove_all(dir);
}
