from hermfold.decode_verify import list_size_profile
from hermfold.folding import default_automorphism, fold_hermitian, orbit_chains
from hermfold.hermitian_curve import curve_create

# Exhaustive list-size profile of the q=2 folded C(D, 4P_inf), m=2, saved as the golden file
curve = curve_create(2)
chains = orbit_chains(default_automorphism(curve, 2), curve, 2)
folded = fold_hermitian(curve, 4, chains)

profile = list_size_profile(folded, range(folded.N + 1), mode="exhaustive")
csv_file = "tests/golden/list_profile_q2.csv"
profile[["radius", "max_list_size"]].to_csv(csv_file, index=False)
print(f"List-size profile of {folded} saved to {csv_file}")
print(profile.to_string(index=False))
