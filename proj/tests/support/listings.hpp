#pragma once

// Fact and rule listings exactly as printed in the write-up of the case,
// including the misspelled rule name and the unbound severity variable.

namespace testsupport::listings {

inline const char* const kUtters = R"(/* EVIDENCE 3 */
utters(
    date(2020,05,12,15,01),
    date(2020,05,12,15,30),
    criminalInRedJacket,
    'jamunindi jamunindi',
    witness(fantine)).)";

inline const char* const kWordsOrigin = R"(words_origin_evaluation(
    date(2020,05,14,10,00),
    eponine,
    'jamunindi jamunindi',
    'reggio calabria',
    100).)";

inline const char* const kDrives = R"(/* EVIDENCE 4 */
drives(
    date(2020,05,12,15,03),
    date(2020,05,12,15,04),
    valjean,
    vehicle(scooter,12345),
    witness(thenardier)).)";

inline const char* const kBorn = R"(born(
     date(1980,10,17,13,07),
     valjean,
     'reggio calabria').)";

inline const char* const kCommits = R"(commits(
     date(2020,05,12,14,45),
     criminalInRedJacket,
     armedRobbery,
     witness(enjolras)).)";

inline const char* const kReliable = R"(reliable(enjolras, hi).
reliable(fantine, hi).
reliable(thenardier, hi).)";

inline const char* const kSamePersonAsPrinted = R"(same_person(X, Y, Evidences) :-
  setof((Ev, severity(S), precision(P)),
       evidence_same_as(Ev, X, Y, severity(G), precision(P)),
       Evidences),
  length(Evidences, L),  L > 1, member((_, severity(hi), precision(hi)), Evidences).)";

inline const char* const kResponsibleAsPrinted = R"(responsibile(X) :-
   committed(Y, Date, Crime, Place, EvidCrimeCommitted),
   same_person(X, Y, EvidSamePerson),
   pretty_print(Date, X, Y, Crime, Place, EvidCrimeCommitted, EvidSamePerson).)";

}  // namespace testsupport::listings
