// DOM wiring: renders the controller state into the static page skeleton.

import { SessionController } from "./controller.js";

export function bind(controller: SessionController, root: Document): void {
  const el = {
    loading: root.getElementById("loading")!,
    error: root.getElementById("error")!,
    errorText: root.getElementById("error-text")!,
    retry: root.getElementById("retry")! as HTMLButtonElement,
    survey: root.getElementById("survey")!,
    progress: root.getElementById("progress")!,
    audio: root.getElementById("clip-audio")! as HTMLAudioElement,
    heardYes: root.getElementById("heard-yes")! as HTMLInputElement,
    heardNo: root.getElementById("heard-no")! as HTMLInputElement,
    transcription: root.getElementById("transcription")! as HTMLTextAreaElement,
    transcriptionRow: root.getElementById("transcription-row")!,
    submit: root.getElementById("submit")! as HTMLButtonElement,
    validation: root.getElementById("validation")!,
    complete: root.getElementById("complete")!,
  };

  function render(): void {
    el.loading.hidden = controller.phase !== "loading";
    el.error.hidden = controller.phase !== "error";
    el.survey.hidden = controller.phase !== "active";
    el.complete.hidden = controller.phase !== "complete";
    if (controller.phase === "error") {
      el.errorText.textContent = controller.errorMessage;
      return;
    }
    const view = controller.current;
    if (!view) return;
    el.progress.textContent = `Clip ${view.index + 1} of ${view.total}`;
    if (!el.audio.src.endsWith(encodeURIComponent(view.clipId))) {
      el.audio.src = controller.clipUrl();
    }
    el.heardYes.checked = view.heardMeaning;
    el.heardNo.checked = !view.heardMeaning;
    el.transcriptionRow.hidden = !view.heardMeaning;
    el.transcription.value = view.transcription;
    const problem = controller.validationError();
    el.submit.disabled = !controller.canSubmit();
    el.validation.textContent = view.played && problem ? problem : "";
  }

  el.audio.addEventListener("ended", () => {
    controller.markPlayed();
    render();
  });
  el.heardYes.addEventListener("change", () => {
    controller.setHeardMeaning(true);
    render();
  });
  el.heardNo.addEventListener("change", () => {
    controller.setHeardMeaning(false);
    render();
  });
  el.transcription.addEventListener("input", () => {
    controller.setTranscription(el.transcription.value);
    render();
  });
  el.submit.addEventListener("click", async () => {
    if (!controller.canSubmit()) return;
    await controller.submit();
    render();
  });
  el.retry.addEventListener("click", async () => {
    await controller.start();
    render();
  });

  void controller.start().then(render);
  render();
}
