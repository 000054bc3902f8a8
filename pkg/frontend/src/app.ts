/** Wiring: command bar, migrate clicks, the dependency modal, and full
 * state refresh after every action. The UI is a thin client; it renders
 * only server-confirmed state. */

import { ApiClient, ApiError, DependencyConflict } from "./api.js";
import { caretMessage, validateEditText } from "./editsyntax.js";
import { renderErrorBanner, renderState } from "./render.js";
import { Side, StateView } from "./types.js";

export class App {
  private stateRoot: HTMLElement;
  private commandForm: HTMLFormElement;
  private commandInput: HTMLInputElement;
  private commandSide: HTMLSelectElement;
  private commandFeedback: HTMLElement;
  private modal: HTMLElement;

  constructor(
    private root: HTMLElement,
    private client: ApiClient,
  ) {
    this.stateRoot = document.createElement("div");
    this.stateRoot.className = "state-root";

    this.commandForm = document.createElement("form");
    this.commandForm.className = "command-bar";
    this.commandSide = document.createElement("select");
    for (const side of ["A", "B"]) {
      const option = document.createElement("option");
      option.value = side;
      option.textContent = side;
      this.commandSide.appendChild(option);
    }
    this.commandInput = document.createElement("input");
    this.commandInput.type = "text";
    this.commandInput.placeholder = "edit, e.g. conv 2 str";
    const submit = document.createElement("button");
    submit.type = "submit";
    submit.textContent = "apply";
    this.commandFeedback = document.createElement("pre");
    this.commandFeedback.className = "command-feedback";
    this.commandForm.append(
      this.commandSide,
      this.commandInput,
      submit,
      this.commandFeedback,
    );
    this.commandForm.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.submitCommand();
    });

    this.modal = document.createElement("div");
    this.modal.className = "modal hidden";

    this.root.replaceChildren(this.commandForm, this.stateRoot, this.modal);
  }

  async load(): Promise<void> {
    await this.refresh(() => this.client.getState());
  }

  private show(state: StateView): void {
    renderState(this.stateRoot, state, {
      onMigrate: (side, index) => void this.migrate(side, index, false),
      onMerge: (side) => void this.merge(side),
    });
  }

  private async refresh(action: () => Promise<StateView>): Promise<void> {
    try {
      this.show(await action());
      this.commandFeedback.textContent = "";
    } catch (error) {
      if (error instanceof DependencyConflict) {
        throw error; // handled by migrate()
      }
      if (error instanceof ApiError) {
        this.commandFeedback.textContent = `server error: ${error.message}`;
        return;
      }
      renderErrorBanner(
        this.stateRoot,
        `failed to load state: ${String(error)}`,
      );
    }
  }

  async submitCommand(): Promise<void> {
    const text = this.commandInput.value;
    const parsed = validateEditText(text);
    if (!parsed.ok) {
      // no request is sent for malformed input
      this.commandFeedback.textContent = caretMessage(text, parsed);
      return;
    }
    const side = this.commandSide.value as Side;
    await this.refresh(() => this.client.edit(side, text));
  }

  async migrate(side: Side, index: number, withDeps: boolean): Promise<void> {
    try {
      await this.refresh(() => this.client.migrate(side, index, withDeps));
      this.hideModal();
    } catch (error) {
      if (error instanceof DependencyConflict) {
        this.showDependencyModal(side, index, error);
        return;
      }
      throw error;
    }
  }

  async merge(side: Side): Promise<void> {
    await this.refresh(() => this.client.merge(side));
  }

  private showDependencyModal(
    side: Side,
    index: number,
    conflict: DependencyConflict,
  ): void {
    this.modal.replaceChildren();
    this.modal.classList.remove("hidden");
    const message = document.createElement("p");
    message.className = "modal-message";
    message.textContent = conflict.userMessage;
    const withDeps = document.createElement("button");
    withDeps.className = "modal-with-deps";
    withDeps.textContent = "migrate with dependencies";
    withDeps.addEventListener("click", () => {
      void this.migrate(side, index, true);
    });
    const cancel = document.createElement("button");
    cancel.className = "modal-cancel";
    cancel.textContent = "cancel";
    cancel.addEventListener("click", () => this.hideModal());
    this.modal.append(message, withDeps, cancel);
  }

  private hideModal(): void {
    this.modal.classList.add("hidden");
    this.modal.replaceChildren();
  }
}
