#include "obrechkoff/coefficients.hpp"

namespace obrechkoff {

// Series in v^2 of the fitted coefficients, v^0 ... v^12, exact rationals.
// Row order: beta10, beta11, beta20, beta21, beta30, beta31.

namespace {

// PL': expansion of the closed forms.
constexpr TaylorTable kPlPrime{{{
    // beta10
    {{
        {"229", "7788"},
        {"45469", "1314147120"},
        {"85771", "341152592352"},
        {"42739761203", "29358705101073004800"},
        {"3801508031029", "608197283570236453277184"},
        {"168279971604233", "13575027728788584540475136000"},
        {"-266348222900207221", "2703381808485285252094734713548800"},
    }},
    // beta11
    {{
        {"3665", "3894"},
        {"-45469", "657073560"},
        {"-85771", "170576296176"},
        {"-42739761203", "14679352550536502400"},
        {"-3801508031029", "304098641785118226638592"},
        {"-168279971604233", "6787513864394292270237568000"},
        {"266348222900207221", "1351690904242642626047367356774400"},
    }},
    // beta20
    {{
        {"-1", "2360"},
        {"-45469", "30105915840"},
        {"-12253", "1116499393152"},
        {"-42739761203", "672581244133672473600"},
        {"-3801508031029", "13933246859972689656895488"},
        {"-168279971604233", "310991544332247573109066752000"},
        {"266348222900207221", "61932019612571989411624831619481600"},
    }},
    // beta21
    {{
        {"711", "12980"},
        {"-1045787", "33116507424"},
        {"-1409095", "6140746662336"},
        {"-983014507669", "739839368547039720960"},
        {"-437173423568335", "76632857729849793112925184"},
        {"-3870439346897359", "342090698765472330419973427200"},
        {"266348222900207221", "2961966155383877754469013686149120"},
    }},
    // beta30
    {{
        {"127", "39251520"},
        {"45469", "1528454188800"},
        {"12253", "56683815344640"},
        {"42739761203", "34146432394478756352000"},
        {"3801508031029", "707380225198613474888540160"},
        {"168279971604233", "15788801481483338327075696640000"},
        {"-266348222900207221", "3144240995715193308590183759142912000"},
    }},
    // beta31
    {{
        {"2923", "3925152"},
        {"-14231797", "9934952227200"},
        {"-3835189", "368444799740160"},
        {"-13377545256539", "221951810564111916288000"},
        {"-1189872013712077", "4597971463790987586775511040"},
        {"-52671631112124929", "102627209629641699125992028160000"},
        {"83366993767764860173", "20437566472148756505836194434428928000"},
    }},
}}};

// PL'': expansion of the exact fitted solution. The beta20 and beta31 rows are
// recomputed from the closed form rather than transcribed.
constexpr TaylorTable kPlDoublePrime{{{
    // beta10
    {{
        {"229", "7788"},
        {"318283", "657073560"},
        {"1512119", "118091281968"},
        {"22946405723893", "44038057651609507200"},
        {"18296930817563773", "651639946682396199939840"},
        {"2913158423117216376847", "1649365869047813021667729024000"},
        {"8050460719799780764991137", "68936236116374773928415735195494400"},
    }},
    // beta11
    {{
        {"3665", "3894"},
        {"-318283", "328536780"},
        {"-1512119", "59045640984"},
        {"-22946405723893", "22019028825804753600"},
        {"-18296930817563773", "325819973341198099969920"},
        {"-2913158423117216376847", "824682934523906510833864512000"},
        {"-8050460719799780764991137", "34468118058187386964207867597747200"},
    }},
    // beta20
    {{
        {"-1", "2360"},
        {"-45469", "2150422560"},
        {"-146366563", "167474908972800"},
        {"-13663045830101", "336290622066836236800"},
        {"-81824878004484479", "35543997091767065451264000"},
        {"-264930975937930814987", "1799308220779432387273886208000"},
        {"-54373332266248853758674493", "5541285965335388526303274408058880000"},
    }},
    // beta21
    {{
        {"711", "12980"},
        {"-1045787", "2365464816"},
        {"-10184496007", "921111999350400"},
        {"-162691107254479", "369919684273519860480"},
        {"-4589005587219802631", "195491984004718859981952000"},
        {"-582588392135442371849", "395847808571475125200254965760"},
        {"-2446080156637919477841851381", "25176712320762960912986616332267520000"},
    }},
    // beta30
    {{
        {"127", "39251520"},
        {"45469", "109175299200"},
        {"274576771", "7368895994803200"},
        {"115636672827803", "39837504460225215744000"},
        {"76494288958873853", "360908278162557895351296000"},
        {"455635060442806091167", "30449831428575009630788843520000"},
        {"136101812396019182508073199", "131285852101792282007800655206318080000"},
    }},
    // beta31
    {{
        {"2923", "3925152"},
        {"-14231797", "709639444800"},
        {"-197204357", "736889599480320"},
        {"-2226470262291239", "258943778991463902336000"},
        {"-8664504427508131", "18767230464453010558267392"},
        {"-347790156691544312063", "11642582605043386035301616640000"},
        {"-6461961511769658995087759767", "3242760546914269365592676183596056576000"},
    }},
}}};

}  // namespace

const TaylorTable& taylor_table(MethodId method) {
  if (method == MethodId::PLPrime) {
    return kPlPrime;
  }
  if (method == MethodId::PLDoublePrime) {
    return kPlDoublePrime;
  }
  throw ConfigurationError("no series table for the classical method");
}

}  // namespace obrechkoff
