#include "support.hpp"
#include "vpower/ilp.hpp"

using namespace vpower;

namespace {

InverseInstance instance(std::vector<Q> sigma, IndexId id, Norm norm = Norm::L1, GameClass cls = GameClass::Simple) {
    InverseInstance inst;
    inst.sigma = std::move(sigma);
    inst.index = std::move(id);
    inst.norm = norm;
    inst.cls = cls;
    return inst;
}

}  // namespace

TEST_CASE("Big-M values") {
    CHECK(ilp::big_m_value(2) == 6);
    CHECK(ilp::big_m_value(3) == 12);
    CHECK(ilp::big_m_value(4) == 28);
    CHECK(ilp::build_class_model(GameClass::Weighted, 3).big_m == 12);
}

TEST_CASE("emitted rows") {
    std::string text = ilp::emit_lp(ilp::build_class_model(GameClass::Simple, 2));
    CHECK(text.find("x_0 = 0") != std::string::npos);
    CHECK(text.find("x_3 = 1") != std::string::npos);
    CHECK(text.find("x_2 - x_3 <= 0") != std::string::npos);
    CHECK(text.find("Binary") != std::string::npos);
    CHECK(ilp::x_name(bit(1) | bit(3)) == "x_5");
}

TEST_CASE("LP text round trip is byte-identical") {
    for (const auto& id : ilp::ilp_indices())
        for (GameClass cls : {GameClass::Simple, GameClass::Weighted}) {
            auto inst = instance(qs({Q(1, 2), Q(1, 3), Q(1, 6)}), id, Norm::L1, cls);
            if (id.tag == IndexTag::Shift || id.tag == IndexTag::SDP) inst.cls = GameClass::Complete;
            auto m = ilp::build_ilp(inst);
            std::string a = ilp::emit_lp(m);
            std::string b = ilp::emit_lp(ilp::parse_lp(a));
            CAPTURE(id.name());
            CHECK(a == b);
            auto n = ilp::build_ilp(instance(qs({Q(1, 2), Q(1, 3), Q(1, 6)}), id.with_normalized(true), Norm::Linf),
                                    Q(1, 3));
            std::string c = ilp::emit_lp(n);
            CHECK(c == ilp::emit_lp(ilp::parse_lp(c)));
        }
    CHECK_THROWS(ilp::parse_lp("Minimize\n obj: x\nSubject To\n r: x >= \nEnd\n"));
}

TEST_CASE("model class sizes at small n") {
    auto s1 = ilp::verify_model_semantics(2, GameClass::Simple, {});
    CHECK(s1.feasible == 4);
    CHECK(s1.ok());
    // the dictatorship of voter 2 violates w_1 >= w_2
    auto w2 = ilp::verify_model_semantics(2, GameClass::Weighted, {});
    CHECK(w2.feasible == 3);
    CHECK(w2.ok());
    auto s3 = ilp::verify_model_semantics(3, GameClass::Simple, {});
    CHECK(s3.feasible == 18);
    CHECK(s3.ok());
    auto c3 = ilp::verify_model_semantics(3, GameClass::Complete, {});
    CHECK(c3.feasible == 8);
    CHECK(c3.ok());
    std::size_t fixed = 0;
    for (const auto& g : enumerate_games(3, GameClass::Simple))
        if (is_complete(g)) ++fixed;
    CHECK(c3.feasible == fixed);
}

TEST_CASE("index blocks reproduce the index at n <= 2") {
    for (GameClass cls : {GameClass::Boolean, GameClass::Simple, GameClass::Complete, GameClass::Weighted}) {
        for (int n = 1; n <= 2; ++n) {
            auto r = ilp::verify_model_semantics(n, cls, ilp::ilp_indices());
            CAPTURE(to_string(cls));
            CHECK(r.ok());
            CHECK(r.index_checks > 0);
        }
    }
}

TEST_CASE("index blocks reproduce the index on three-voter simple games") {
    auto r = ilp::verify_model_semantics(3, GameClass::Simple, ilp::ilp_indices());
    CHECK(r.feasible == 18);
    CHECK(r.index_mismatches == 0);
    for (const auto& f : r.failures) MESSAGE(f);
}

TEST_CASE("objective of [2;2,1,1] under Banzhaf") {
    std::vector<Q> sigma{Q(1, 2), Q(1, 4), Q(1, 4)};
    auto m = ilp::build_ilp(instance(sigma, IndexId(IndexTag::Bz)));
    Game g = parse_game_text("[2;2,1,1]");
    auto r = ilp::range_under(m, ilp::incidence_assignment(m, g), m.objective, false);
    REQUIRE(r.feasible);
    CHECK(r.lo == l1_distance(oracle::banzhaf(table_of(g), 3), sigma));
    CHECK(r.lo == Q(1, 4));
    auto linf = ilp::build_ilp(instance(sigma, IndexId(IndexTag::Bz), Norm::Linf));
    auto q = ilp::range_under(linf, ilp::incidence_assignment(linf, g), linf.objective, false);
    CHECK(q.lo == Q(1, 4));
}

TEST_CASE("normalized mode accepts every simple game at the norm diameter") {
    std::vector<Q> sigma{1, 0, 0};
    auto l1 = ilp::build_ilp(instance(sigma, IndexId(IndexTag::Bz, true)), Q(2));
    auto linf = ilp::build_ilp(instance(sigma, IndexId(IndexTag::Bz, true), Norm::Linf), Q(1));
    auto l1_tight = ilp::build_ilp(instance(sigma, IndexId(IndexTag::Bz, true)), Q(1));
    bool some_rejected = false;
    for (const auto& g : enumerate_games(3, GameClass::Simple)) {
        CHECK(ilp::feasible_under(l1, ilp::incidence_assignment(l1, g)));
        CHECK(ilp::feasible_under(linf, ilp::incidence_assignment(linf, g)));
        if (!ilp::feasible_under(l1_tight, ilp::incidence_assignment(l1_tight, g))) some_rejected = true;
    }
    // alpha = 1 is not enough for L1: a game giving voter 1 no power is at distance 2
    CHECK(some_rejected);
    CHECK_THROWS(ilp::build_ilp(instance(sigma, IndexId(IndexTag::Bz, true))));
}

TEST_CASE("Tijs encodings") {
    std::vector<IndexId> tijs{IndexId(IndexTag::Tijs)};
    auto def = ilp::verify_model_semantics(3, GameClass::Simple, tijs);
    CHECK(def.ok());
    ilp::BuildOptions verbatim;
    verbatim.tijs_unique_mwc = true;
    auto alt = ilp::verify_model_semantics(3, GameClass::Simple, tijs, verbatim);
    CHECK(alt.index_mismatches > 0);
}

TEST_CASE("instance JSON") {
    auto inst = parse_instance_json(R"({"sigma": ["1/2", "0.25", "1/4"], "index": "bz", "normalized": true,
                                        "class": "weighted", "norm": "Linf", "proper": true})");
    CHECK(inst.n() == 3);
    CHECK(inst.sigma[1] == Q(1, 4));
    CHECK(inst.index.tag == IndexTag::Bz);
    CHECK(inst.index.normalized);
    CHECK(inst.cls == GameClass::Weighted);
    CHECK(inst.norm == Norm::Linf);
    CHECK(inst.proper);
    CHECK_FALSE(inst.strong);
    CHECK_THROWS(parse_instance_json(R"({"sigma": ["1/2", "1/4"], "index": "bz"})"));
    CHECK_THROWS(parse_instance_json(R"({"sigma": ["3/2", "-1/2"], "index": "bz"})"));
}
