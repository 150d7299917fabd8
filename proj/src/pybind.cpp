#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hopfolog/groth.hpp"
#include "hopfolog/io.hpp"

namespace py = pybind11;
using namespace hopfolog;

namespace {

/// Value wrapper so Python never holds a shared_ptr-to-const directly.
struct PyFamily {
  FamilyPtr ptr;
};

SmashModule as_smash(const LoadedModule& m) {
  if (m.smash) return *m.smash;
  const FamilyPtr& fam = m.module.family;
  DerivationAlgebra b = scalar_algebra(fam->field(), fam->grading_modulus2());
  return make_smash_module(std::move(b), m.module,
                           {Matrix::identity(fam->field(), m.module.dim())});
}

SmashHom as_smash(const LoadedHom& f) {
  if (f.smash) return *f.smash;
  return make_smash_hom(as_smash(LoadedModule{f.hom.source, std::nullopt}),
                        as_smash(LoadedModule{f.hom.target, std::nullopt}), f.hom.mat);
}

py::list decomposition_list(const Decomposition& d) {
  py::list out;
  for (const auto& e : d.entries)
    out.append(py::make_tuple(e.i, e.shift2, e.mult, e.projective));
  return out;
}

}  // namespace

PYBIND11_MODULE(_hopfolog, m) {
  m.doc() = "exact computations in stable module categories of small Hopf algebras";
  m.attr("__version__") = "0.1.0";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ScaleError>(m, "ScaleError", PyExc_ValueError);

  py::class_<PyFamily>(m, "Family")
      .def_property_readonly("name", [](const PyFamily& f) { return f.ptr->name(); })
      .def_property_readonly("p", [](const PyFamily& f) { return f.ptr->characteristic_p(); })
      .def_property_readonly("nilpotency", [](const PyFamily& f) { return f.ptr->nilpotency(); })
      .def_property_readonly("cyclic", [](const PyFamily& f) { return f.ptr->cyclic(); })
      .def("__eq__", [](const PyFamily& a, const PyFamily& b) { return a.ptr->same(*b.ptr); })
      .def("__repr__", [](const PyFamily& f) { return "<Family " + f.ptr->name() + ">"; });
  m.def("truncated",
        [](long p, long mm, bool cyclic) { return PyFamily{HopfFamily::truncated(p, mm, cyclic)}; },
        py::arg("p"), py::arg("m") = 1, py::arg("cyclic") = false);
  m.def("taft", [](long n) { return PyFamily{HopfFamily::taft(n)}; }, py::arg("n"));
  m.def("group_ring_z2", [] { return PyFamily{HopfFamily::group_ring_z2()}; });

  py::class_<GradedModule>(m, "Module")
      .def_property_readonly("dim", &GradedModule::dim)
      .def_property_readonly("degrees2", [](const GradedModule& g) { return g.deg2; })
      .def_property_readonly("family", [](const GradedModule& g) { return PyFamily{g.family}; })
      .def("to_json", [](const GradedModule& g) { return canonical_text(module_json(g)); })
      .def("__repr__", [](const GradedModule& g) {
        return "<Module dim " + std::to_string(g.dim()) + " over " + g.family->name() + ">";
      });

  py::class_<SmashModule>(m, "SmashModule")
      .def_property_readonly("dim", &SmashModule::dim)
      .def_property_readonly("algebra_dim", [](const SmashModule& s) { return s.algebra.dim(); })
      .def("restrict_to_h", [](const SmashModule& s) { return restrict_to_H(s); })
      .def("to_json", [](const SmashModule& s) { return canonical_text(module_json(s)); });

  py::class_<ModuleHom>(m, "Hom")
      .def_property_readonly("source", [](const ModuleHom& f) { return f.source; })
      .def_property_readonly("target", [](const ModuleHom& f) { return f.target; })
      .def("to_json", [](const ModuleHom& f) { return canonical_text(hom_json(f)); });

  // construction
  m.def("indecomposable",
        [](const PyFamily& fam, long i, long shift2) {
          return make_indecomposable(fam.ptr, i, shift2);
        },
        py::arg("family"), py::arg("i"), py::arg("shift2") = 0);
  m.def("balanced_indecomposable",
        [](const PyFamily& fam, long i) { return balanced_indecomposable(fam.ptr, i); });
  m.def("free_module", [](const PyFamily& fam) { return free_module(fam.ptr); });
  m.def("zero_module", [](const PyFamily& fam) { return zero_module(fam.ptr); });
  m.def("tensor", &tensor);
  m.def("direct_sum", &direct_sum);
  m.def("shift", &shift, py::arg("module"), py::arg("shift2"));
  m.def("dual", &dual);
  m.def("loads_module", [](const std::string& text) {
    LoadedModule lm = parse_module(nlohmann::json::parse(text));
    return lm.smash ? py::cast(*lm.smash) : py::cast(lm.module);
  });
  m.def("loads_hom", [](const std::string& text) {
    return parse_hom(nlohmann::json::parse(text)).hom;
  });
  m.def("identity_hom", &identity_hom);
  m.def("zero_hom", &zero_hom);
  m.def("compose", &compose);

  // structure
  m.def("decompose", [](const GradedModule& g) { return decomposition_list(decompose(g)); });
  m.def("stable_decompose", [](const GradedModule& g) {
    auto [st, proj] = stable_decompose(g);
    return py::make_tuple(decomposition_list(st.value), decomposition_list(proj));
  });
  m.def("stably_isomorphic", &stably_isomorphic);
  m.def("slash_homology", &slash_homology, py::arg("module"), py::arg("a"));
  m.def("stable_hom_dim", &stable_hom_dim);
  m.def("hom_dim",
        [](const GradedModule& a, const GradedModule& b) { return long(hom_basis(a, b).size()); });
  m.def("shift_T", &shift_T);
  m.def("shift_Tprime", &shift_Tprime);
  m.def("cone", [](const ModuleHom& f) {
    Triangle t = cone(f);
    return py::make_tuple(t.Z, t.v, t.w);
  });
  m.def("is_null_homotopic",
        [](const ModuleHom& f) { return null_homotopy(f).has_value(); });

  // Grothendieck layer
  m.def("class_of", [](const GradedModule& g) { return class_of(g).to_string(); });
  m.def("split_class", [](const GradedModule& g) { return split_class(g).to_string(); });
  m.def("fusion_set", &fusion_set);
  m.def("verlinde_oracle", &verlinde_oracle);
  m.def("fusion_mismatches", [](const PyFamily& fam) { return fusion_table(fam.ptr).mismatches; });
  m.def("hm_split_deviation", &hm_split_deviation);

  // smash layer; plain modules/homs are wrapped over B = k
  m.def("quasi_iso", [](const ModuleHom& f) {
    return is_quasi_iso(as_smash(LoadedHom{f, std::nullopt})).verdict;
  });
  m.def("quasi_iso_json", [](const std::string& text) {
    return is_quasi_iso(as_smash(parse_hom(nlohmann::json::parse(text)))).verdict;
  });
  m.def("ore_pullback_json", [](const std::string& s_text, const std::string& f_text) {
    SmashHom s = as_smash(parse_hom(nlohmann::json::parse(s_text)));
    SmashHom f = as_smash(parse_hom(nlohmann::json::parse(f_text)));
    OrePullback pb = ore_pullback(s, f);
    SmashHom defect = make_smash_hom(pb.C, s.target, s.mat * pb.h_X.mat - f.mat * pb.h_Z.mat);
    py::dict out;
    out["C"] = pb.C;
    out["h_Z_quasi_iso"] = is_quasi_iso(pb.h_Z).verdict;
    out["defect_null_homotopic"] = a_null_homotopy(defect).has_value();
    return out;
  });
  m.def("ore_kill_json", [](const std::string& f_text, const std::string& s_text) {
    SmashHom f = as_smash(parse_hom(nlohmann::json::parse(f_text)));
    SmashHom s = as_smash(parse_hom(nlohmann::json::parse(s_text)));
    OreKill k = ore_kill(f, s);
    py::dict out;
    out["W"] = k.W;
    out["t_quasi_iso"] = is_quasi_iso(k.t).verdict;
    out["ft_null_homotopic"] = a_null_homotopy(smash_compose(f, k.t)).has_value();
    return out;
  });
  m.def("dg2_report", [](const std::string& text) {
    DgReport r = dg_p2_checks(as_smash(parse_module(nlohmann::json::parse(text))));
    py::dict out;
    out["dim"] = r.dim;
    out["rank_d"] = r.rank_d;
    out["dim_ker"] = r.dim_ker;
    out["dim_im"] = r.dim_im;
    out["derived_trivial"] = r.derived_trivial;
    out["homotopy_trivial"] = r.homotopy_trivial;
    return out;
  });
}
