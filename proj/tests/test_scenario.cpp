// test_scenario.cpp — configuration parsing, resolution and run determinism

#include <gtest/gtest.h>

#include <sstream>

#include "scenario.hpp"

using namespace raman::cli;

namespace {
std::string render(const RunOutput& r) {
    std::ostringstream os;
    write_csv(os, "x.meta.ini", r.table);
    write_meta(os, r, "test");
    return os.str();
}
std::string meta(const RunOutput& r) {
    std::ostringstream os;
    write_meta(os, r, "test");
    return os.str();
}
} // namespace

TEST(Format, ShortestRoundTrip) {
    EXPECT_EQ(format_number(0.1), "0.1");
    EXPECT_EQ(format_number(1e-300), "1e-300");
    EXPECT_EQ(std::stod(format_number(M_PI)), M_PI);
}

TEST(Ini, ParsesSectionsAndRejectsBareKeys) {
    const auto s = parse_ini_string("[a]\nx = 1\n[provenance]\ntool = y\n");
    ASSERT_NE(s.find("a.x"), nullptr);
    EXPECT_EQ(*s.find("a.x"), "1");
    EXPECT_EQ(s.find("provenance.tool"), nullptr);
    EXPECT_THROW(parse_ini_string("x = 1\n"), ConfigError);
}

TEST(Run, UnknownKeyNamed) {
    auto s = preset_settings("fig2f");
    s.set("packet.widht", "1");
    try {
        run(s);
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.key(), "packet.widht");
    }
}

TEST(Run, BadValueNamed) {
    auto s = preset_settings("fig2f");
    s.set("packet.width", "-1");
    EXPECT_THROW(run(s), std::exception);
    s.set("packet.width", "abc");
    try {
        run(s);
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.key(), "packet.width");
    }
}

TEST(Run, UnknownMode) {
    EXPECT_THROW(run(parse_ini_string("[scenario]\nmode = nope\n")), ConfigError);
}

TEST(Run, UnknownPreset) { EXPECT_THROW(preset_settings("fig99"), ConfigError); }

TEST(Run, MetadataRoundTrip) {
    const auto first = run(preset_settings("fig2f"));
    const auto again = run(parse_ini_string(meta(first)));
    EXPECT_EQ(render(first), render(again));
}

TEST(Run, TemporalDeterministicAcrossThreads) {
    auto s = parse_ini_string("[scenario]\nmode = temporal\nseed = 3\n[temporal]\nsamples = 200000\n");
    const auto a = run(s);
    s.set("scenario.threads", "3");
    const auto b = run(s);
    EXPECT_EQ(a.table.rows, b.table.rows);
    EXPECT_EQ(*a.results.find("results.monte_carlo_mean"), *b.results.find("results.monte_carlo_mean"));
}

TEST(Run, EveryPresetParses) {
    for (const auto& p : presets()) EXPECT_NO_THROW(preset_settings(p.name)) << p.name;
    EXPECT_GE(presets().size(), 23u);
}

TEST(Run, LaserWarnsWhenOverdamped) {
    const auto r = run(preset_settings("fig4"));
    EXPECT_FALSE(r.warnings.empty());
    EXPECT_EQ(r.table.columns.front(), "detuning_gamma");
}
