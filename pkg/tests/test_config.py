import pytest

from modindex.config import ExtractionConfig, load_config
from modindex.errors import UsageError


def test_defaults():
    c = ExtractionConfig()
    assert c.include_globs == ("**/*.java",)
    assert c.fold_nested_classes and c.count_constructors_as_functions
    assert c.self_dependency_mode == "textual-self-reference"


def test_load_key_value_file(tmp_path):
    path = tmp_path / "m.conf"
    path.write_text("# settings\nexclude-globs = **/test/**, gen/*.java\n"
                    "fold_nested_classes = false\nself-dependency-mode=always\n")
    c = load_config(path)
    assert c.exclude_globs == ("**/test/**", "gen/*.java")
    assert not c.fold_nested_classes
    assert c.self_dependency_mode == "always"


@pytest.mark.parametrize("text", ["bogus = 1\n", "fold_nested_classes = maybe\n", "no equals\n",
                                  "self_dependency_mode = sometimes\n"])
def test_bad_config_is_usage_error(tmp_path, text):
    path = tmp_path / "m.conf"
    path.write_text(text)
    with pytest.raises(UsageError):
        load_config(path)


def test_missing_config_is_usage_error(tmp_path):
    with pytest.raises(UsageError):
        load_config(tmp_path / "absent.conf")
