#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <vector>

#include "dpbloom/audit.hpp"
#include "dpbloom/bloom.hpp"
#include "dpbloom/bounds.hpp"
#include "dpbloom/budget.hpp"
#include "dpbloom/calibration.hpp"
#include "dpbloom/error.hpp"
#include "dpbloom/experiment.hpp"
#include "dpbloom/oracles.hpp"
#include "dpbloom/private_filter.hpp"
#include "dpbloom/serialize.hpp"

namespace py = pybind11;
using namespace dpbloom;

namespace {

std::vector<bool> bits_to_list(const BitArray& bits) {
  std::vector<bool> out(bits.size());
  for (uint64_t j = 0; j < bits.size(); ++j) out[j] = bits.get(j);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Differentially private Bloom filters";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
  py::register_exception<IoError>(m, "IoError", PyExc_IOError);

  py::class_<FilterParams>(m, "FilterParams")
      .def(py::init([](uint64_t m, uint32_t k, uint64_t n, uint64_t seed) {
             FilterParams p{m, k, n, seed};
             p.validate();
             return p;
           }),
           py::arg("m"), py::arg("k"), py::arg("n"), py::arg("seed") = 0)
      .def_readonly("m", &FilterParams::m)
      .def_readonly("k", &FilterParams::k)
      .def_readonly("n", &FilterParams::n)
      .def_readonly("seed", &FilterParams::seed);

  py::class_<BloomFilter>(m, "BloomFilter")
      .def_property_readonly("params", &BloomFilter::params)
      .def_property_readonly("inserted_count", &BloomFilter::inserted_count)
      .def_property_readonly("load_factor", &BloomFilter::load_factor)
      .def_property_readonly("bits",
                             [](const BloomFilter& f) { return bits_to_list(f.bits()); })
      .def("query", [](const BloomFilter& f, uint64_t y) { return bloom_query(f, y); })
      .def("save", [](const BloomFilter& f, const std::string& path) {
        save_filter_file(f, path);
      });

  py::class_<PrivacyBudget>(m, "PrivacyBudget")
      .def_readonly("epsilon", &PrivacyBudget::epsilon)
      .def_readonly("delta", &PrivacyBudget::delta)
      .def_readonly("N", &PrivacyBudget::big_n)
      .def_readonly("epsilon0", &PrivacyBudget::epsilon0)
      .def_readonly("keep_prob", &PrivacyBudget::keep_prob)
      .def_readonly("flip_prob", &PrivacyBudget::flip_prob);

  py::class_<PrivateBloomFilter>(m, "PrivateBloomFilter")
      .def_property_readonly("params", &PrivateBloomFilter::params)
      .def_property_readonly("budget", &PrivateBloomFilter::budget)
      .def_property_readonly("rng_seed", &PrivateBloomFilter::rng_seed)
      .def_property_readonly(
          "bits", [](const PrivateBloomFilter& f) { return bits_to_list(f.bits()); })
      .def("query",
           [](const PrivateBloomFilter& f, uint64_t y) { return private_query(f, y); })
      .def("save", [](const PrivateBloomFilter& f, const std::string& path) {
        save_filter_file(f, path);
      });

  m.def(
      "bloom_init",
      [](const std::vector<uint64_t>& dataset, const FilterParams& params) {
        return bloom_init(dataset, params);
      },
      py::arg("dataset"), py::arg("params"));
  m.def("derive_budget", &derive_budget, py::arg("epsilon"), py::arg("delta"),
        py::arg("m"), py::arg("k"), py::arg("dataset_size"));
  m.def("privatize", &privatize, py::arg("filter"), py::arg("budget"),
        py::arg("rng_seed"));
  m.def(
      "load_filter",
      [](const std::string& path) -> py::object {
        const LoadedFilter loaded = load_filter_file(path);
        if (loaded.header.privatized()) return py::cast(loaded.to_private());
        return py::cast(loaded.to_bloom());
      },
      py::arg("path"));

  py::class_<YDistribution>(m, "YDistribution")
      .def_readonly("m", &YDistribution::m)
      .def_readonly("k", &YDistribution::k)
      .def_readonly("pmf", &YDistribution::pmf)
      .def("prob", &YDistribution::prob);

  py::class_<WDistribution>(m, "WDistribution")
      .def_readonly("m", &WDistribution::m)
      .def_readonly("k", &WDistribution::k)
      .def_readonly("dataset_size", &WDistribution::dataset_size)
      .def_readonly("p0", &WDistribution::p0)
      .def_readonly("pmf", &WDistribution::pmf)
      .def_readonly("cdf", &WDistribution::cdf)
      .def("mean", &WDistribution::mean);

  py::class_<ZConditional>(m, "ZConditional")
      .def_property_readonly("m", &ZConditional::m)
      .def_property_readonly("k", &ZConditional::k)
      .def_property_readonly("feasible_max", &ZConditional::feasible_max)
      .def("prob", &ZConditional::prob, py::arg("a"), py::arg("b"), py::arg("z"));

  m.def("dist_y", &dist_y, py::arg("m"), py::arg("k"));
  m.def("dist_z_given_y", &dist_z_given_y, py::arg("m"), py::arg("k"));
  m.def("dist_w", &dist_w, py::arg("m"), py::arg("k"), py::arg("dataset_size"));
  m.def("quantile_n", &quantile_n, py::arg("dist"), py::arg("delta"));

  m.def("fpr_exact", &fpr_exact, py::arg("m"), py::arg("k"), py::arg("dataset_size"));
  m.def(
      "fpr_forms",
      [](uint64_t m, uint32_t k, uint64_t a) {
        const FprForms f = fpr_forms(m, k, a);
        return py::make_tuple(f.exact, f.approximate, f.bound);
      },
      py::arg("m"), py::arg("k"), py::arg("dataset_size"));
  m.def("accuracy_bound_standard", &accuracy_bound_standard, py::arg("m"), py::arg("k"),
        py::arg("dataset_size"), py::arg("alpha"));
  m.def(
      "accuracy_bound_private",
      [](double alpha, double t, uint32_t k, double delta_err) {
        return accuracy_bound_private(UtilityParams{alpha, t, k, delta_err});
      },
      py::arg("alpha"), py::arg("t"), py::arg("k"), py::arg("delta_err"));
  m.def("random_guess_rate", &random_guess_rate, py::arg("k"));

  m.def("enumerate_y", &enumerate_y, py::arg("m"), py::arg("k"));
  m.def(
      "mc_w_pmf",
      [](uint64_t m, uint32_t k, uint64_t dataset_size, uint64_t trials,
         uint64_t rng_seed) {
        return mc_w_distribution(m, k, dataset_size, trials, rng_seed).pmf;
      },
      py::arg("m"), py::arg("k"), py::arg("dataset_size"), py::arg("trials"),
      py::arg("rng_seed"));
}
