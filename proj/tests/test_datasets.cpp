#include <doctest.h>

#include <cmath>

#include "tec/covariance.hpp"
#include "tec/datasets.hpp"
#include "tec/error.hpp"

using namespace tec;

TEST_CASE("the dataset catalog is complete and closed") {
    auto names = embedded_dataset_names();
    REQUIRE(names.size() == 4);
    for (const auto& name : names) CHECK(embedded_dataset(name).name == name);
    CHECK_THROWS_AS((void)embedded_dataset("nope"), Error);
}

TEST_CASE("five-variable matrix entries are as printed") {
    CovarianceMatrix sigma = embedded_dataset("uai-eq7").covariance;
    REQUIRE(sigma.size() == 5);
    CHECK(sigma("Y", "S") == 0.626);
    CHECK(sigma("X", "Z") == 0.800);
    CHECK(sigma("X", "T") == 0.640);
    CHECK(sigma("Z", "T") == 0.200);
    for (const auto& l : sigma.labels()) CHECK(sigma(l, l) == 1.0);
}

TEST_CASE("painting-study matrix entries are as printed") {
    CovarianceMatrix sigma = embedded_dataset("paint-table2").covariance;
    REQUIRE(sigma.size() == 11);
    CHECK(sigma("X4", "X9") == 0.521);
    CHECK(sigma("X1", "X2") == -0.736);
    CHECK(sigma("X4", "Y") == -0.614);
}

TEST_CASE("csv round trip is bit-exact for every dataset") {
    for (const auto& name : embedded_dataset_names()) {
        CovarianceMatrix sigma = embedded_dataset(name).covariance;
        CovarianceMatrix again = CovarianceMatrix::from_csv(sigma.to_csv());
        CHECK((again.matrix() - sigma.matrix()).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("template diagrams imply their bundled covariance exactly") {
    for (const char* name : {"fig1-template", "fig2-template"}) {
        EmbeddedDataset d = embedded_dataset(name);
        REQUIRE(d.graph.has_value());
        CovarianceMatrix implied = implied_covariance(*d.graph);
        CHECK((implied.matrix() - d.covariance.matrix()).cwiseAbs().maxCoeff() < 1e-12);
        // Both templates are standardized to unit variances.
        for (const auto& l : implied.labels())
            CHECK(implied(l, l) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("the reconstructed diagram rounds to the printed matrix") {
    EmbeddedDataset printed = embedded_dataset("uai-eq7");
    CovarianceMatrix implied = implied_covariance(*printed.graph);
    for (const auto& a : printed.covariance.labels())
        for (const auto& b : printed.covariance.labels()) {
            double rounded = std::round(implied(a, b) * 1000.0) / 1000.0;
            CHECK(rounded == doctest::Approx(printed.covariance(a, b)).epsilon(1e-12));
        }
}

TEST_CASE("provenance notes mark the reconstructions") {
    CHECK(embedded_dataset("fig1-template").notes.find("Reconstructed") != std::string::npos);
    CHECK(embedded_dataset("uai-eq7").notes.find("reconstruction") != std::string::npos);
}
