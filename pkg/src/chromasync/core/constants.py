FEATURE_NAMES = ("mean", "max", "min", "icorr_rg", "icorr_rb", "icorr_gb")
CHANNEL_PAIRS = (("r", "g"), ("r", "b"), ("g", "b"))

# project-wide label convention: positive class is fake
LABEL_REAL = 0
LABEL_FAKE = 1
SVM_REAL = -1
SVM_FAKE = 1
POSITIVE_CLASS = "fake"
CLASS_NAMES = {LABEL_REAL: "real", LABEL_FAKE: "fake"}

FORMAT_VERSION = 1
VARIANCE_FLOOR = 1e-9
EXPECTATION_GAP_FLOOR = 1e-9
PEARSON_VARIANCE_FLOOR = 1e-12
MIN_IMAGE_SIDE = 2

FEATURE_CSV_HEADER = ("path", "label") + FEATURE_NAMES
PREDICTIONS_CSV_HEADER = ("path", "predicted_label", "decision_value")
HISTOGRAM_CSV_HEADER = ("bin_left", "bin_right", "count")
