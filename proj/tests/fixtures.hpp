#pragma once

#include <string_view>

namespace enconv::testing {

// Travel sentence with a scoped purpose clause; line breaks inside UWs kept.
inline constexpr std::string_view kTravelBlock = R"({unl}
agt(go(icl>move>do,plt>place,plf>place,
    agt>thing).@entry.@past,i(icl>person))
plt(go(icl>move>do,plt>place,plf>place,
    agt>thing).@entry.@past,
    malaysia(iof>asian_country>thing))
plf(go(icl>move>do,plt>place,plf>place,
    agt>thing).@entry.@past,
    bangladesh(iof>asian_country>thing))
met(go(icl>move>do,plt>place,plf>place,
    agt>thing).@entry.@past,
    aeroplane(icl>heavier-than-air_craft>thing,
    equ>airplane))
obj:01(attend(icl>go_to>do,agt>person,
    obj>place).@entry,
    conference(icl>meeting>thing).@indef)
pur(go(icl>move>do,plt>place,plf>place,
    agt>thing).@entry.@past,:01)
{/unl})";

// Golden result and step listing for ঢাকায় আজ খুব গরম, irregular spacing kept.
inline constexpr std::string_view kHotBlock = R"([S]
man (hot (icl>state).@entry.@present, very (intensifier))
tim(hot(icl>state).@entry.@present, today(icl>period))
plc (hot (icl>state).@entry.@present, Dhaka (icl>place))
[/S])";

inline constexpr std::string_view kHotTrace[] = {
    "/<</ [ঢাকা] / [য়] / “আজ খুব গরম” />>/",
    "/<</[ঢাকা য়]/ “আজ খুব গরম” />>/",
    "/<</ ঢাকা য় / আজ / [খুব] / [গরম] />>/",
    "/<</ ঢাকা য় / [আজ] / [গরম] />>/",
    "/<</[ঢাকা য়] / [গরম] />>/",
    "/<</ [গরম] />>/",
};

}  // namespace enconv::testing
