import json
from dataclasses import dataclass
from pathlib import Path

import pytest

from codecl.core import SourceSnippet

CORPUS_DIR = Path(__file__).parent / "corpus"

BUBBLE_SORT_JAVA = (CORPUS_DIR / "java" / "BubbleSort.java").read_text(encoding="utf-8")

# The figure-level reference program: a bubble sort method inside a class,
# with the swap comment, matching the layout the extraction targets use.
BUBBLE_SORT_SNIPPET = """public class BubbleSortExample {
    static void bubbleSort(int[] arr) {
        int n = arr.length;
        int temp = 0;
        for(int i=0; i < n; i++) {
            for(int j=1; j < (n-i); j++) {
                if(arr[j-1] > arr[j]){
                    // swap elements
                    temp = arr[j-1];
                    arr[j-1] = arr[j];
                    arr[j] = temp;
                }
            }
        }
    }
}"""

GETMAX_SNIPPET = "public int getMax(int a, int b){ if (a>b) return a; else return b;}"


@dataclass(frozen=True)
class CorpusProgram:
    name: str
    language: str
    text: str
    inputs: tuple[str, ...]

    def snippet(self) -> SourceSnippet:
        return SourceSnippet(self.name, self.language, self.text)


def load_corpus() -> list[CorpusProgram]:
    manifest = json.loads((CORPUS_DIR / "manifest.json").read_text(encoding="utf-8"))
    out = []
    for entry in manifest["programs"]:
        path = CORPUS_DIR / entry["file"]
        out.append(CorpusProgram(
            name=Path(entry["file"]).stem,
            language=entry["language"],
            text=path.read_text(encoding="utf-8"),
            inputs=tuple(entry["inputs"]),
        ))
    return out


@pytest.fixture(scope="session")
def corpus() -> list[CorpusProgram]:
    return load_corpus()


@pytest.fixture()
def bubble_snippet() -> SourceSnippet:
    return SourceSnippet("bubble", "java", BUBBLE_SORT_SNIPPET)


@pytest.fixture()
def getmax_snippet() -> SourceSnippet:
    return SourceSnippet("getmax", "java", GETMAX_SNIPPET)
