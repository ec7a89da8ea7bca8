#include "gsmodel/config.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <string>

using namespace gsm;

namespace {

bool has_finding(const ValidationReport& r, Severity s, const std::string& field, const std::string& text)
{
    return std::any_of(r.findings.begin(), r.findings.end(), [&](const Finding& f) {
        return f.severity == s && f.field == field && f.message.find(text) != std::string::npos;
    });
}

} // namespace

TEST(Config, EthPresetValues)
{
    const Twp twp = eth_preset();
    std::vector<Topic> expected{Topic("AGG"), Topic("BLOCKS"), Topic("SUB1"), Topic("SUB2"), Topic("SUB3")};
    EXPECT_EQ(twp.topic_names(), expected);
    EXPECT_EQ(twp.topic(Topic("BLOCKS")).topic_weight, rat("0.8"));
    EXPECT_EQ(twp.topic(Topic("SUB1")).w3, rat("-37.55"));
    EXPECT_EQ(twp.global.topic_cap, rat("32.72"));
    EXPECT_EQ(eth_cap37_preset().global.topic_cap, rat("37.72"));
}

TEST(Config, FilecoinPresetValues)
{
    const Twp twp = filecoin_preset();
    std::vector<Topic> expected{Topic("BLOCKS"), Topic("MESSAGES")};
    EXPECT_EQ(twp.topic_names(), expected);
    for (const auto& [t, tp] : twp.topics) {
        EXPECT_EQ(tp.w3, 0) << t;
        EXPECT_EQ(tp.w3b, 0) << t;
    }
    EXPECT_EQ(twp.global.topic_cap, 0);
}

TEST(Config, SubnetPresetCopiesTemplate)
{
    const Twp twp = eth_preset_with_subnets(10);
    EXPECT_EQ(twp.topics.size(), 12u);
    EXPECT_EQ(twp.topic(Topic("SUB10")), twp.topic(Topic("SUB1")));
}

TEST(Config, SerializeRoundTripsEveryPreset)
{
    for (const std::string& name : preset_names()) {
        const Twp twp = preset_by_name(name);
        const std::string text = serialize_config(twp);
        const Twp back = parse_config(text);
        EXPECT_EQ(back, twp) << name;
        EXPECT_EQ(back.name, twp.name);
        EXPECT_EQ(serialize_config(back), text) << name;
        EXPECT_EQ(config_fingerprint(back), config_fingerprint(twp)) << name;
    }
}

TEST(Config, FingerprintDependsOnContent)
{
    Twp a = eth_preset();
    Twp b = a;
    b.global.topic_cap = rat("37.72");
    EXPECT_NE(config_fingerprint(a), config_fingerprint(b));
    EXPECT_EQ(config_fingerprint(a).size(), 16u);
}

TEST(Config, UnknownPresetThrows)
{
    EXPECT_THROW(preset_by_name("ropsten"), ConfigError);
}

TEST(Config, EmptyTopicsRejected)
{
    try {
        parse_config(R"({"name": "x", "topics": {}})");
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("no topics defined"), std::string::npos);
    }
}

TEST(Config, MissingFieldsTakeDefaults)
{
    const Twp twp = parse_config(R"({"topics": {"t": {"w1": "0.5"}}})");
    const TopicParams& tp = twp.topic(Topic("t"));
    EXPECT_EQ(tp.w1, rat("0.5"));
    EXPECT_EQ(tp.w2, TopicParams{}.w2);
    EXPECT_EQ(twp.global, GlobalParams{});
}

TEST(Config, UnknownFieldRejected)
{
    EXPECT_THROW(parse_config(R"({"topics": {"t": {"w9": 1}}})"), ConfigError);
}

TEST(Config, SyntaxErrorReportsLine)
{
    try {
        parse_config("{\n\"topics\": {\n\"t\": {,}\n}\n}");
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
    }
}

TEST(Config, EthValidatesClean)
{
    EXPECT_TRUE(validate_config(eth_preset(), false).findings.empty());
    EXPECT_TRUE(validate_config(eth_preset(), true).findings.empty());
}

TEST(Config, FilecoinWarnsOnZeroWeights)
{
    const ValidationReport lenient = validate_config(filecoin_preset(), false);
    EXPECT_FALSE(lenient.has_errors());
    EXPECT_TRUE(has_finding(lenient, Severity::warning, "topics.MESSAGES.w3", "zero-valued weight"));
    EXPECT_TRUE(has_finding(lenient, Severity::warning, "topics.MESSAGES.w3b", "zero-valued weight"));

    const ValidationReport strict = validate_config(filecoin_preset(), true);
    EXPECT_TRUE(strict.has_errors());
    EXPECT_EQ(strict.error_count(), lenient.warning_count());
}

TEST(Config, DecayAboveOneIsAnError)
{
    Twp twp = eth_preset();
    twp.topics[Topic("BLOCKS")].first_message_deliveries_decay = rat("1.5");
    for (bool strict : {false, true}) {
        const ValidationReport r = validate_config(twp, strict);
        EXPECT_TRUE(has_finding(r, Severity::error, "topics.BLOCKS.firstMessageDeliveriesDecay", "decay not in (0,1]"));
    }
    std::string text = serialize_config(twp);
    EXPECT_NO_THROW(parse_config(text, false));
    EXPECT_THROW(parse_config(text, true), ConfigError);
}

TEST(Config, MeshDegreeOrderingIsAnError)
{
    Twp twp = eth_preset();
    twp.topics[Topic("AGG")].d_low = 20;
    EXPECT_TRUE(validate_config(twp, false).has_errors());
}

TEST(Config, PositiveDeficitWeightWarns)
{
    Twp twp = eth_preset();
    twp.topics[Topic("AGG")].w3 = 1;
    const ValidationReport r = validate_config(twp, false);
    EXPECT_GE(r.warning_count(), 1u);
    EXPECT_FALSE(r.has_errors());
}
