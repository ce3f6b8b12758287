/** Tiny DOM construction helper; all text lands via textContent. */
export function el(tag, attrs = {}, ...children) {
    const node = document.createElement(tag);
    if (attrs.class !== undefined)
        node.className = attrs.class;
    if (attrs.id !== undefined)
        node.id = attrs.id;
    if (attrs.title !== undefined)
        node.title = attrs.title;
    if (attrs.href !== undefined && node instanceof HTMLAnchorElement) {
        node.href = attrs.href;
    }
    if (node instanceof HTMLInputElement) {
        if (attrs.type !== undefined)
            node.type = attrs.type;
        if (attrs.value !== undefined)
            node.value = attrs.value;
        if (attrs.placeholder !== undefined)
            node.placeholder = attrs.placeholder;
        if (attrs.checked !== undefined)
            node.checked = attrs.checked;
        if (attrs.name !== undefined)
            node.name = attrs.name;
        if (attrs.autocomplete !== undefined) {
            node.setAttribute("autocomplete", attrs.autocomplete);
        }
    }
    if (node instanceof HTMLButtonElement) {
        if (attrs.type !== undefined)
            node.type = attrs.type;
        if (attrs.disabled !== undefined)
            node.disabled = attrs.disabled;
    }
    if (node instanceof HTMLSelectElement && attrs.name !== undefined) {
        node.name = attrs.name;
    }
    if (node instanceof HTMLOptionElement && attrs.value !== undefined) {
        node.value = attrs.value;
    }
    if (attrs.onclick)
        node.addEventListener("click", attrs.onclick);
    if (attrs.onsubmit) {
        node.addEventListener("submit", attrs.onsubmit);
    }
    if (attrs.onchange)
        node.addEventListener("change", attrs.onchange);
    for (const child of children) {
        if (child === null || child === undefined)
            continue;
        node.append(child);
    }
    return node;
}
