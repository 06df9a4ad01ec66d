// Samples a unit sphere, meshes it and writes sphere.obj.
#include <fstream>
#include <iostream>

#include "implicitforge/implicitforge.hpp"

int main() {
    using namespace implicitforge;
    Expr e = parse("x^2 + y^2 + z^2 - 1");
    ScalarField f = sample_field(e, GridSpec::cube(-1.5, 1.5, 32), {});
    TriangleMesh m = marching_cubes(f, 0.0);
    std::ofstream out("sphere.obj");
    export_obj(m, out);
    std::cout << m.vertices.size() << " vertices, " << m.triangles.size() << " triangles, chi "
              << euler_characteristic(m) << "\n";
}
