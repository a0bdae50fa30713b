"""Shared fixture data: two game definitions and a hand-checked two-player log.

FIXTURE-A is small enough to score by hand: player 9001 takes one hint in
level 1 (penalty 2) and submits one wrong flag in level 2 (penalty 1) for a
final score of 8 + 19 = 27 over 600 s; player 9002 solves level 1 clean but
displays the level-2 solution, ending at 10 + 0 = 10 over 720 s.
"""

import json

FIXTURE_GAME_DOC = json.dumps(
    {
        "game_id": "fixture-game",
        "title": "Fixture Game",
        "wrong_flag_penalty": 1,
        "total_max": 30,
        "levels": [
            {
                "order": 1,
                "name": "Recon",
                "max_points": 10,
                "estimated_duration_s": 300,
                "hints": [{"number": 1, "title": "Where to look", "penalty": 2}],
            },
            {
                "order": 2,
                "name": "Exploit",
                "max_points": 20,
                "estimated_duration_s": 600,
                "hints": [
                    {"number": 1, "title": "Tool choice", "penalty": 4},
                    {"number": 2, "title": "Payload", "penalty": 6},
                ],
            },
        ],
    },
    indent=2,
)

# Four levels worth 16/22/26/36 points (cumulative 16/38/64/100).
STUDY_GAME_DOC = json.dumps(
    {
        "game_id": "study-game",
        "title": "Study Game",
        "wrong_flag_penalty": 1,
        "total_max": 100,
        "levels": [
            {
                "order": 1,
                "name": "Warm-up",
                "max_points": 16,
                "estimated_duration_s": 600,
                "hints": [{"number": 1, "title": "Scan hint", "penalty": 3}],
            },
            {
                "order": 2,
                "name": "Foothold",
                "max_points": 22,
                "estimated_duration_s": 1200,
                "hints": [
                    {"number": 1, "title": "Service hint", "penalty": 4},
                    {"number": 2, "title": "Exploit hint", "penalty": 5},
                ],
            },
            {
                "order": 3,
                "name": "Escalation",
                "max_points": 26,
                "estimated_duration_s": 1500,
                "hints": [
                    {"number": 1, "title": "Enumeration hint", "penalty": 5},
                    {"number": 2, "title": "Kernel hint", "penalty": 6},
                ],
            },
            {
                "order": 4,
                "name": "Exfiltration",
                "max_points": 36,
                "estimated_duration_s": 2100,
                "hints": [
                    {"number": 1, "title": "Channel hint", "penalty": 6},
                    {"number": 2, "title": "Encoding hint", "penalty": 8},
                    {"number": 3, "title": "Full walkthrough pointer", "penalty": 10},
                ],
            },
        ],
    },
    indent=2,
)

FIXTURE_A_CSV = """9001,2018-08-24 10:00:00,00:00:00,1,Game started
9001,2018-08-24 10:00:00,00:00:00,1,Level started
9002,2018-08-24 10:00:30,00:00:00,1,Game started
9002,2018-08-24 10:00:30,00:00:00,1,Level started
9001,2018-08-24 10:03:00,00:03:00,1,Hint 1 taken
9002,2018-08-24 10:04:30,00:04:00,1,Correct flag submitted
9002,2018-08-24 10:04:30,00:00:00,2,Level started
9001,2018-08-24 10:05:00,00:05:00,1,Correct flag submitted
9001,2018-08-24 10:05:00,00:00:00,2,Level started
9001,2018-08-24 10:06:00,00:01:00,2,Wrong flag submitted
9002,2018-08-24 10:07:30,00:03:00,2,Solution displayed
9001,2018-08-24 10:10:00,00:05:00,2,Correct flag submitted
9001,2018-08-24 10:10:00,00:05:00,2,Game ended
9002,2018-08-24 10:12:30,00:08:00,2,Correct flag submitted
9002,2018-08-24 10:12:30,00:08:00,2,Game ended
"""

# The verbatim log line documented for the five-field format.
PAPER_LINE = "9003581,2018-08-24 16:57:54,00:03:42,4,Hint 3 taken"
