VERSION = "1.0.0"

DEFAULT_COLLAR_S = 0.25
DEFAULT_ETA = 0.5

# Dialog statistics the simulator defaults to.
DIALOG_DURATION_MIN = 30.8
SEGMENT_MEAN_S = 2.54
SEGMENT_MIN_S = 0.09
SEGMENT_MAX_S = 14.91

SHORT_SEGMENT_MS = 1000
OVERALL_ID = "OVERALL"
