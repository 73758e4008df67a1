#include <pybind11/pybind11.h>
PYBIND11_MODULE(_mkcs, m) { m.doc() = "placeholder"; }
