#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lfd/cli_io.hpp"
#include "lfd/error.hpp"

namespace py = pybind11;

namespace {

lfd::RunConfig config_from(const py::dict& settings) {
    lfd::RunConfig c;
    // presets first so the remaining keys refine them
    for (const auto& [k, v] : settings)
        if (py::str(k).cast<std::string>() == "preset") lfd::apply_setting(c, "preset", py::str(v));
    for (const auto& [k, v] : settings) {
        const auto key = py::str(k).cast<std::string>();
        if (key == "preset") continue;
        std::string value;
        if (py::isinstance<py::list>(v) || py::isinstance<py::tuple>(v)) {
            for (const auto& item : v) value += (value.empty() ? "" : ",") + py::str(item).cast<std::string>();
        } else {
            value = py::str(v);
        }
        lfd::apply_setting(c, key, value);
    }
    return c;
}

py::object json_loads(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

py::dict compute(const py::dict& settings) {
    const lfd::RunConfig c = config_from(settings);
    lfd::PipelineResult r;
    {
        py::gil_scoped_release release;
        r = lfd::run_pipeline(c);
    }
    py::dict out;
    out["status"] = lfd::to_string(r.status);
    out["message"] = r.message;
    out["report"] = json_loads(r.report);
    if (r.run && r.mesh) {
        out["obj"] = lfd::format_obj(r.run->complex, *r.mesh);
        out["svg"] = lfd::format_svg(r.run->complex);
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_lfd, m) {
    m.doc() = "fundamental domains for lifted triangle groups";

    static py::exception<lfd::Error> error(m, "Error", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const lfd::Error& e) {
            PyErr_SetString(error.ptr(), e.what());
        }
    });

    m.def("presets", [] {
        py::list out;
        for (const lfd::Preset& p : lfd::presets()) {
            py::dict d;
            d["name"] = p.name;
            d["type"] = std::string(1, p.type);
            d["n"] = p.n;
            d["k"] = p.k;
            d["signature"] = py::make_tuple(p.signature.alpha1, p.signature.alpha2, p.signature.alpha3);
            d["realizable"] = p.realizable;
            d["offsets"] = p.offsets ? py::object(py::make_tuple((*p.offsets)[0], (*p.offsets)[1], (*p.offsets)[2]))
                                     : py::object(py::none());
            d["note"] = p.note;
            out.append(d);
        }
        return out;
    });

    m.def("compute", &compute, py::arg("settings") = py::dict(),
          "Runs the pipeline; settings use the config-file keys.");

    m.def(
        "export",
        [](const std::string& dir, const py::dict& settings) {
            const lfd::RunConfig c = config_from(settings);
            lfd::PipelineResult r;
            std::vector<std::filesystem::path> written;
            {
                py::gil_scoped_release release;
                r = lfd::run_pipeline(c);
                written = lfd::export_result(r, dir, c.formats);
            }
            std::vector<std::string> paths;
            for (const auto& p : written) paths.push_back(p.string());
            return py::make_tuple(lfd::to_string(r.status), paths);
        },
        py::arg("dir"), py::arg("settings") = py::dict());

    m.def(
        "verify_tiling",
        [](const py::dict& settings) {
            const lfd::RunConfig c = config_from(settings);
            lfd::TilingRun t = [&] {
                py::gil_scoped_release release;
                return lfd::run_tiling(c);
            }();
            py::dict d;
            d["samples"] = t.tiling.samples;
            d["covered"] = t.tiling.covered;
            d["double_interior"] = t.tiling.double_interior;
            d["max_achievers"] = t.tiling.max_achievers;
            return d;
        },
        py::arg("settings") = py::dict());

    m.def("so2", [](int order) {
        const lfd::So2Domain d = lfd::so2_domain(order);
        py::list vertices, arcs;
        for (const auto& v : d.vertices) vertices.append(py::make_tuple(v.x, v.y));
        for (const auto& a : d.arcs) arcs.append(py::make_tuple(a.start, a.end));
        py::dict out;
        out["m"] = order;
        out["vertices"] = vertices;
        out["arcs"] = arcs;
        out["svg"] = lfd::format_so2_svg(d);
        return out;
    });

    m.def("so11", [](double dist, int n) {
        const lfd::So11Domain d = lfd::so11_domain(dist, n);
        py::list vertices, faces;
        for (const auto& v : d.vertices) vertices.append(py::make_tuple(v.x, v.y));
        for (const auto& f : d.faces) faces.append(py::make_tuple(f.k, f.image.start, f.image.end));
        py::dict out;
        out["d"] = dist;
        out["n"] = n;
        out["vertices"] = vertices;
        out["faces"] = faces;
        out["full_intersection_diameter"] = d.full_intersection_diameter;
        out["svg"] = lfd::format_so11_svg(d);
        return out;
    });

    m.def("json_number", [](double x) { return json_loads(lfd::json_number(x)); });
}
