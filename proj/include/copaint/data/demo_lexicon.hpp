#pragma once

#include <string_view>

namespace copaint::data {

// Demo affective norms. Scores are hand-assigned for illustration only and
// are not taken from any published norms.
inline constexpr std::string_view kDemoLexiconCsv = R"(word,valence,arousal,concreteness
balloon,7.6,5.8,4.9
presents,8.0,6.5,4.6
puppy,8.2,5.9,4.9
sun,7.9,5.2,4.8
rainbow,8.1,4.8,4.7
party,7.9,6.9,3.9
fireworks,7.6,7.2,4.8
rollercoaster,7.0,7.9,4.9
trophy,7.8,6.3,4.9
cake,7.5,5.5,4.9
dancer,7.5,6.4,4.6
guitar,7.2,5.3,5.0
kite,7.2,5.0,4.9
bicycle,6.9,4.8,5.0
beach,8.0,4.8,4.9
sports,7.0,6.8,3.6
family,7.9,5.0,3.9
music,8.0,5.5,3.8
dog,7.6,5.4,4.9
flower,7.6,3.8,4.9
brook,7.2,3.0,4.6
forest,7.0,3.6,4.8
lake,7.3,3.2,4.8
cloud,6.2,3.0,4.6
blanket,7.0,2.8,4.9
tea,6.9,2.9,4.9
hammock,7.4,2.5,4.7
candle,6.6,3.2,4.9
bed,7.2,2.6,5.0
cat,7.0,4.0,5.0
nature,7.6,4.4,3.4
meadow,7.4,3.1,4.6
grave,2.3,3.5,4.7
tombstone,2.4,3.6,4.8
funeral,1.8,4.0,4.2
rain,4.0,3.3,4.9
tear,2.9,4.0,4.7
fog,4.4,2.9,4.5
ruins,3.0,4.2,4.5
prison,2.3,5.0,4.6
hospital,3.2,5.0,4.9
wheelchair,3.6,3.8,4.9
loneliness,2.0,4.1,2.0
failure,1.8,4.8,1.8
poverty,1.7,4.2,2.4
gun,3.5,7.0,5.0
knife,3.6,6.1,5.0
skull,3.0,5.3,4.8
snake,3.4,6.8,4.9
fire,4.3,7.2,4.9
bomb,1.9,7.6,4.9
traffic,3.0,6.3,4.3
storm,3.9,6.8,4.5
volcano,4.6,6.8,4.8
shark,3.7,7.0,4.9
wasp,3.1,6.4,4.9
siren,3.5,7.1,4.7
injustice,1.9,6.5,1.7
anger,2.5,7.6,2.0
freedom,7.8,6.6,1.5
love,8.7,6.4,2.0
peace,7.7,2.9,1.7
)";

}  // namespace copaint::data
