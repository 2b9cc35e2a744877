"""Coefficients of the p-primary series through x^4 for r = 2..5.

Keys are (p, family label, representative prime power q).  Labels name the
prime power whose p-class the representative shares.
"""

SERIES = {
    (2, '3', 3): [
        [1, 1, -1, -1, -1],
        [1, 6, 3, -52, -123],
        [1, 28, 266, 140, -16093],
        [1, 120, 6180, 165640, 1812810],
    ],
    (2, '3^2', 9): [
        [1, -3, 1, 5, -7],
        [1, -30, 387, -2620, 7557],
        [1, -252, 30730, -2409708, 136120355],
        [1, -2040, 2064420, -1381529480, 687673344330],
    ],
    (2, '3^4', 81): [
        [1, -7, 17, -7, -47],
        [1, -126, 7683, -301308, 8515077],
        [1, -2044, 2080778, -1406543852, 710224134179],
        [1, -32760, 536346660, -5851180400520, 47850868789739850],
    ],
    (2, '3^8', 6561): [
        [1, -15, 97, -335, 545],
        [1, -510, 129027, -21586940, 2686400517],
        [1, -16380, 134086666, -731397570540, 2990679500390435],
        [1, -524280, 137430564900, -24015899530362760, 3147475739004150743370],
    ],
    (2, '-3', 5): [
        [1, -1, -1, 1, -1],
        [1, -6, 3, 52, -123],
        [1, -28, 266, -140, -16093],
        [1, -120, 6180, -165640, 1812810],
    ],
    (2, '-3^2', 7): [
        [1, 3, 1, -5, -7],
        [1, 30, 387, 2620, 7557],
        [1, 252, 30730, 2409708, 136120355],
        [1, 2040, 2064420, 1381529480, 687673344330],
    ],
    (2, '-3^4', 47): [
        [1, 7, 17, 7, -47],
        [1, 126, 7683, 301308, 8515077],
        [1, 2044, 2080778, 1406543852, 710224134179],
        [1, 32760, 536346660, 5851180400520, 47850868789739850],
    ],
    (2, '-3^8', 31): [
        [1, 15, 97, 335, 545],
        [1, 510, 129027, 21586940, 2686400517],
        [1, 16380, 134086666, 731397570540, 2990679500390435],
        [1, 524280, 137430564900, 24015899530362760, 3147475739004150743370],
    ],
    (3, '4', 4): [
        [1, -1, 0, -1, 1],
        [1, -4, 6, -16, 49],
        [1, -13, 78, -403, 2236],
        [1, -40, 780, -10960, 134590],
    ],
    (3, '4^3', 64): [
        [1, -4, 6, -7, 13],
        [1, -40, 780, -9988, 95710],
        [1, -364, 66066, -7975123, 720619627],
        [1, -3280, 5377560, -5875968040, 4814102083180],
    ],
    (3, '4^9', 262144): [
        [1, -13, 78, -295, 832],
        [1, -364, 66066, -7972936, 719823559],
        [1, -9841, 48417720, -158794067653, 390554638982833],
        [1, -265720, 35303426340, -3126918620489920, 207718860182330357770],
    ],
    (3, '2', 2): [
        [1, 1, 0, 1, 1],
        [1, 4, 6, 16, 49],
        [1, 13, 78, 403, 2236],
        [1, 40, 780, 10960, 134590],
    ],
    (3, '2^3', 8): [
        [1, 4, 6, 7, 13],
        [1, 40, 780, 9988, 95710],
        [1, 364, 66066, 7975123, 720619627],
        [1, 3280, 5377560, 5875968040, 4814102083180],
    ],
    (3, '2^9', 512): [
        [1, 13, 78, 295, 832],
        [1, 364, 66066, 7972936, 719823559],
        [1, 9841, 48417720, 158794067653, 390554638982833],
        [1, 265720, 35303426340, 3126918620489920, 207718860182330357770],
    ],
}
